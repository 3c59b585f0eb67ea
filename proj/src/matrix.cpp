#include "k3fib/matrix.hpp"

#include <algorithm>
#include <cstdlib>

namespace k3fib {

Int det(const IntMat& m) {
  if (m.rows != m.cols) fail(errc::invalid_params, "determinant of non-square matrix");
  int n = m.rows;
  if (n == 0) return 1;
  IntMat a = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      a.swap_rows(k, piv);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        // Bareiss: division is exact
        a(i, j) = t / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

int rank_of(const IntMat& m) {
  SnfResult s = smith_normal_form(m);
  int r = 0;
  for (const Int& d : s.diag)
    if (d != 0) ++r;
  return r;
}

namespace {

// position of the entry minimizing (|value|, i, j) among nonzero entries of the
// trailing submatrix starting at (t, t); returns false if all zero
bool find_pivot(const IntMat& a, int t, int& pi, int& pj) {
  bool found = false;
  Int best = 0;
  for (int i = t; i < a.rows; ++i)
    for (int j = t; j < a.cols; ++j) {
      const Int& x = a(i, j);
      if (x == 0) continue;
      Int ax = abs(x);
      if (!found || ax < best) {
        found = true;
        best = ax;
        pi = i;
        pj = j;
      }
    }
  return found;
}

}  // namespace

SnfResult smith_normal_form(const IntMat& m) {
  IntMat a = m;
  IntMat left = IntMat::identity(m.rows);
  IntMat right = IntMat::identity(m.cols);
  int k = std::min(m.rows, m.cols);

  for (int t = 0; t < k; ++t) {
    int pi, pj;
    if (!find_pivot(a, t, pi, pj)) break;
    a.swap_rows(t, pi);
    left.swap_rows(t, pi);
    a.swap_cols(t, pj);
    right.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < a.rows; ++i) {
        if (a(i, t) == 0) continue;
        Int q = round_div(a(i, t), a(t, t));
        a.add_row(i, t, -q);
        left.add_row(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < a.cols; ++j) {
        if (a(t, j) == 0) continue;
        Int q = round_div(a(t, j), a(t, t));
        a.add_col(j, t, -q);
        right.add_col(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // a smaller nonzero remainder appeared; re-pivot on it
        if (!find_pivot(a, t, pi, pj)) fail(errc::internal, "snf lost its pivot");
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);
        continue;
      }
      // row and column are clear; enforce that the pivot divides the rest
      bool divides = true;
      for (int i = t + 1; i < a.rows && divides; ++i)
        for (int j = t + 1; j < a.cols && divides; ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.add_row(t, i, 1);
            left.add_row(t, i, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      left.negate_row(t);
    }
  }

  SnfResult out;
  out.diag.resize(k);
  for (int t = 0; t < k; ++t) out.diag[t] = a(t, t);
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

IntMat kernel_basis(const IntMat& m) {
  SnfResult s = smith_normal_form(m);
  int k = std::min(m.rows, m.cols);
  int rank = 0;
  for (int t = 0; t < k; ++t)
    if (s.diag[t] != 0) ++rank;
  IntMat out(m.cols, m.cols - rank);
  for (int j = rank; j < m.cols; ++j)
    for (int i = 0; i < m.cols; ++i) out(i, j - rank) = s.right(i, j);
  return out;
}

std::optional<Vec> solve_integer(const IntMat& m, const Vec& b) {
  if (static_cast<int>(b.size()) != m.rows) fail(errc::invalid_params, "solve shape mismatch");
  SnfResult s = smith_normal_form(m);
  Vec c = mul_vec(s.left, b);
  int k = std::min(m.rows, m.cols);
  Vec y(m.cols, Int(0));
  for (int i = 0; i < m.rows; ++i) {
    if (i < k && s.diag[i] != 0) {
      if (c[i] % s.diag[i] != 0) return std::nullopt;
      y[i] = c[i] / s.diag[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return mul_vec(s.right, y);
}

IntMat column_lattice_basis(const IntMat& m) {
  // column HNF by integer column operations; staircase grows down-right
  IntMat a = m;
  int row = 0, piv = 0;
  while (row < a.rows && piv < a.cols) {
    // gcd-reduce this row across columns piv.. until a single nonzero remains
    for (;;) {
      int best = -1;
      for (int j = piv; j < a.cols; ++j)
        if (a(row, j) != 0 && (best < 0 || abs(a(row, j)) < abs(a(row, best)))) best = j;
      if (best < 0) break;
      a.swap_cols(piv, best);
      bool any = false;
      for (int j = piv + 1; j < a.cols; ++j) {
        if (a(row, j) == 0) continue;
        Int q = a(row, j) / a(row, piv);  // truncated; remainder shrinks
        a.add_col(j, piv, -q);
        if (a(row, j) != 0) any = true;
      }
      if (!any) break;
    }
    if (a(row, piv) == 0) {
      ++row;
      continue;
    }
    if (a(row, piv) < 0) a.negate_col(piv);
    // reduce earlier columns against the new pivot
    for (int j = 0; j < piv; ++j) {
      Int q = floor_div(a(row, j), a(row, piv));
      if (q != 0) a.add_col(j, piv, -q);
    }
    ++piv;
    ++row;
  }
  IntMat out(a.rows, piv);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < piv; ++j) out(i, j) = a(i, j);
  return out;
}

RatMat inverse_rational(const IntMat& m) {
  if (m.rows != m.cols) fail(errc::invalid_params, "inverse of non-square matrix");
  int n = m.rows;
  RatMat a = to_rational(m);
  RatMat inv = RatMat::identity(n);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (a(i, k) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) fail(errc::degenerate_lattice, "singular matrix has no inverse");
    a.swap_rows(k, piv);
    inv.swap_rows(k, piv);
    Rat d = a(k, k);
    for (int j = 0; j < n; ++j) {
      a(k, j) /= d;
      inv(k, j) /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rat c = a(i, k);
      for (int j = 0; j < n; ++j) {
        a(i, j) -= c * a(k, j);
        inv(i, j) -= c * inv(k, j);
      }
    }
  }
  for (auto& x : inv.a) x.canonicalize();
  return inv;
}

IntMat inverse_unimodular(const IntMat& m) {
  RatMat inv = inverse_rational(m);
  IntMat out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      Rat x = inv(i, j);
      x.canonicalize();
      if (x.get_den() != 1) fail(errc::internal, "matrix is not unimodular");
      out(i, j) = x.get_num();
    }
  return out;
}

IntMat complete_to_unimodular(const Vec& x) {
  int n = static_cast<int>(x.size());
  if (is_zero_vec(x)) fail(errc::zero_vector, "cannot complete the zero vector");
  IntMat col(n, 1);
  for (int i = 0; i < n; ++i) col(i, 0) = x[i];
  SnfResult s = smith_normal_form(col);
  if (s.diag[0] != 1) fail(errc::not_primitive, "vector is not primitive");
  // left * x = e1, so inverse(left) has first column x
  IntMat u = inverse_unimodular(s.left);
  bool flip = false;
  for (int i = 0; i < n; ++i)
    if (u(i, 0) != x[i]) flip = true;
  if (flip) {
    u.negate_col(0);
    for (int i = 0; i < n; ++i)
      if (u(i, 0) != x[i]) fail(errc::internal, "unimodular completion failed");
  }
  return u;
}

}  // namespace k3fib
