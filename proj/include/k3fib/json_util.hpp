#pragma once

#include <json.hpp>

#include "k3fib/matrix.hpp"

namespace k3fib {

using json = nlohmann::json;

inline json to_json(const Vec& v) {
  json out = json::array();
  for (const Int& x : v) out.push_back(to_i64(x));
  return out;
}

inline json to_json(const IntMat& m) {
  json out = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(to_i64(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

inline Vec vec_from_json(const json& j) {
  if (!j.is_array()) fail(errc::parse_error, "expected an array of integers");
  Vec v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) fail(errc::parse_error, "expected an integer entry");
    v.emplace_back(static_cast<long>(x.get<std::int64_t>()));
  }
  return v;
}

inline IntMat intmat_from_json(const json& j) {
  if (!j.is_array()) fail(errc::parse_error, "expected a matrix (array of rows)");
  int rows = static_cast<int>(j.size());
  int cols = rows ? static_cast<int>(j[0].size()) : 0;
  IntMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      fail(errc::parse_error, "ragged matrix rows");
    for (int jj = 0; jj < cols; ++jj) {
      if (!j[i][jj].is_number_integer()) fail(errc::parse_error, "matrix entries must be integers");
      m(i, jj) = static_cast<long>(j[i][jj].get<std::int64_t>());
    }
  }
  return m;
}

inline json rat_to_json(const Rat& r) { return to_string(r); }

}  // namespace k3fib
