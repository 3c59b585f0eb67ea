#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "k3fib/numeric.hpp"

namespace k3fib {

// Dense row-major matrix over exact scalars. Sizes stay small (rank <= ~24),
// so no effort is spent on sparsity or blocking.
template <class T>
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  Mat(std::initializer_list<std::initializer_list<T>> init) {
    rows = static_cast<int>(init.size());
    cols = rows ? static_cast<int>(init.begin()->size()) : 0;
    a.reserve(static_cast<size_t>(rows) * cols);
    for (const auto& row : init) {
      if (static_cast<int>(row.size()) != cols) fail(errc::invalid_params, "ragged matrix literal");
      for (const auto& x : row) a.push_back(x);
    }
  }

  T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool operator<(const Mat& o) const {
    if (rows != o.rows) return rows < o.rows;
    if (cols != o.cols) return cols < o.cols;
    return a < o.a;
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  Mat transposed() const {
    Mat m(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  std::vector<T> col(int j) const {
    std::vector<T> v(rows);
    for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
  }

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < cols; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int k = 0; k < rows; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }
  // row i += c * row j
  void add_row(int i, int j, const T& c) {
    for (int k = 0; k < cols; ++k) (*this)(i, k) += c * (*this)(j, k);
  }
  void add_col(int i, int j, const T& c) {
    for (int k = 0; k < rows; ++k) (*this)(k, i) += c * (*this)(k, j);
  }
  void negate_row(int i) {
    for (int k = 0; k < cols; ++k) (*this)(i, k) = -(*this)(i, k);
  }
  void negate_col(int j) {
    for (int k = 0; k < rows; ++k) (*this)(k, j) = -(*this)(k, j);
  }
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

template <class T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
  if (x.cols != y.rows) fail(errc::invalid_params, "matrix product shape mismatch");
  Mat<T> z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const T& xik = x(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < y.cols; ++j) z(i, j) += xik * y(k, j);
    }
  return z;
}

template <class T>
std::vector<T> mul_vec(const Mat<T>& m, const std::vector<T>& v) {
  if (m.cols != static_cast<int>(v.size())) fail(errc::invalid_params, "matrix-vector shape mismatch");
  std::vector<T> out(m.rows);
  for (int i = 0; i < m.rows; ++i) {
    T s = 0;
    for (int j = 0; j < m.cols; ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

inline RatMat to_rational(const IntMat& m) {
  RatMat q(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) q.a[i] = Rat(m.a[i]);
  return q;
}

// Exact determinant by fraction-free (Bareiss) elimination.
Int det(const IntMat& m);

int rank_of(const IntMat& m);

// Smith normal form: left * M * right = diag(d1..dk, 0..), d_i >= 0, d_i | d_{i+1},
// with |det(left)| = |det(right)| = 1. Deterministic for a fixed input.
struct SnfResult {
  std::vector<Int> diag;  // length min(rows, cols)
  IntMat left;            // rows x rows
  IntMat right;           // cols x cols
};
SnfResult smith_normal_form(const IntMat& m);

// Basis of the integer kernel {x : M x = 0}; columns span a saturated sublattice of Z^cols.
IntMat kernel_basis(const IntMat& m);

// One integral solution of M x = b, if any.
std::optional<Vec> solve_integer(const IntMat& m, const Vec& b);

// Canonical basis (column-style Hermite form, lower-left staircase) of the lattice
// spanned by the columns of m. Result has full column rank.
IntMat column_lattice_basis(const IntMat& m);

// Exact inverse; fails on singular input.
RatMat inverse_rational(const IntMat& m);

// Inverse of a matrix with det = ±1; result is integral.
IntMat inverse_unimodular(const IntMat& m);

// Unimodular U whose first column is the given primitive vector.
IntMat complete_to_unimodular(const Vec& x);

}  // namespace k3fib
