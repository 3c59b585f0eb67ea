#include "k3fib/lattice.hpp"

#include <algorithm>

namespace k3fib {

Lattice::Lattice(IntMat gram, std::string label, bool allow_degenerate)
    : gram_(std::move(gram)), label_(std::move(label)) {
  if (gram_.rows != gram_.cols) fail(errc::invalid_params, "Gram matrix must be square");
  for (int i = 0; i < gram_.rows; ++i) {
    if (gram_(i, i) % 2 != 0) fail(errc::not_even, "odd diagonal entry in Gram matrix");
    for (int j = i + 1; j < gram_.cols; ++j)
      if (gram_(i, j) != gram_(j, i)) fail(errc::invalid_params, "Gram matrix must be symmetric");
  }
  det_ = k3fib::det(gram_);
  if (det_ == 0 && gram_.rows > 0 && !allow_degenerate)
    fail(errc::degenerate_lattice, "degenerate Gram matrix" + (label_.empty() ? "" : " (" + label_ + ")"));
}

Int Lattice::inner(const Vec& x, const Vec& y) const {
  if (static_cast<int>(x.size()) != rank() || static_cast<int>(y.size()) != rank())
    fail(errc::invalid_params, "vector length does not match rank");
  Int s = 0;
  for (int i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    Int row = 0;
    for (int j = 0; j < rank(); ++j) row += gram_(i, j) * y[j];
    s += x[i] * row;
  }
  return s;
}

Signature signature(const Lattice& l) {
  int n = l.rank();
  RatMat a = to_rational(l.gram());
  Signature sig;
  std::vector<bool> used(n, false);
  for (;;) {
    // prefer a nonzero diagonal pivot
    int piv = -1;
    for (int i = 0; i < n; ++i)
      if (!used[i] && a(i, i) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) {
      // all remaining diagonal zero: either everything is zero, or a
      // hyperbolic-style off-diagonal pair remains; fold it onto the diagonal
      int bi = -1, bj = -1;
      for (int i = 0; i < n && bi < 0; ++i) {
        if (used[i]) continue;
        for (int j = 0; j < n; ++j)
          if (!used[j] && j != i && a(i, j) != 0) {
            bi = i;
            bj = j;
            break;
          }
      }
      if (bi < 0) break;  // remaining block is zero
      for (int k = 0; k < n; ++k) a(bi, k) += a(bj, k);
      for (int k = 0; k < n; ++k) a(k, bi) += a(k, bj);
      continue;
    }
    used[piv] = true;
    Rat d = a(piv, piv);
    if (d > 0)
      ++sig.n_plus;
    else
      ++sig.n_minus;
    for (int i = 0; i < n; ++i) {
      if (used[i] || a(i, piv) == 0) continue;
      Rat c = a(i, piv) / d;
      for (int j = 0; j < n; ++j) a(i, j) -= c * a(piv, j);
      for (int j = 0; j < n; ++j) a(j, i) -= c * a(j, piv);
    }
  }
  sig.n_zero = n - sig.n_plus - sig.n_minus;
  return sig;
}

bool is_positive_definite(const Lattice& l) {
  Signature s = signature(l);
  return s.n_plus == l.rank();
}

bool is_negative_definite(const Lattice& l) {
  Signature s = signature(l);
  return s.n_minus == l.rank();
}

bool is_definite(const Lattice& l) {
  Signature s = signature(l);
  return s.n_plus == l.rank() || s.n_minus == l.rank();
}

bool is_hyperbolic(const Lattice& l) {
  Signature s = signature(l);
  return s.n_plus == 1 && s.n_zero == 0 && s.n_minus == l.rank() - 1;
}

bool is_primitive(const Vec& v) { return vec_gcd(v) == 1; }

Int divisibility(const Lattice& l, const Vec& v) {
  if (is_zero_vec(v)) fail(errc::zero_vector, "divisibility of the zero vector");
  if (l.degenerate()) fail(errc::degenerate_lattice, "divisibility in a degenerate lattice");
  Vec gv = mul_vec(l.gram(), v);
  return vec_gcd(gv);
}

Sublattice orthogonal_complement_all(const Lattice& l, const std::vector<Vec>& vs) {
  for (const Vec& v : vs)
    if (is_zero_vec(v)) fail(errc::zero_vector, "orthogonal complement of the zero vector");
  IntMat rows(static_cast<int>(vs.size()), l.rank());
  for (int i = 0; i < static_cast<int>(vs.size()); ++i) {
    Vec gv = mul_vec(l.gram(), vs[i]);
    for (int j = 0; j < l.rank(); ++j) rows(i, j) = gv[j];
  }
  IntMat basis = kernel_basis(rows);
  IntMat gram = basis.transposed() * l.gram() * basis;
  return Sublattice{Lattice(gram, "", /*allow_degenerate=*/true), basis};
}

Sublattice orthogonal_complement(const Lattice& l, const Vec& v) {
  return orthogonal_complement_all(l, {v});
}

Lattice isotropic_quotient(const Lattice& l, const Vec& f) {
  if (is_zero_vec(f)) fail(errc::zero_vector, "isotropic quotient of the zero vector");
  if (!is_primitive(f)) fail(errc::not_primitive, "fiber class must be primitive");
  if (l.norm_of(f) != 0) fail(errc::not_isotropic, "fiber class must be isotropic");
  Sublattice comp = orthogonal_complement(l, f);
  // express f in the complement basis (it lies there: f.f = 0) and rotate it
  // to the first basis vector, then drop that direction
  auto x = solve_integer(comp.embedding, f);
  if (!x) fail(errc::internal, "isotropic vector missing from its own complement");
  IntMat u = complete_to_unimodular(*x);
  IntMat basis = comp.embedding * u;
  IntMat gram = basis.transposed() * l.gram() * basis;
  int m = gram.rows - 1;
  IntMat quot(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) quot(i, j) = gram(i + 1, j + 1);
  return Lattice(quot);
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  IntMat g(a.rank() + b.rank(), a.rank() + b.rank());
  for (int i = 0; i < a.rank(); ++i)
    for (int j = 0; j < a.rank(); ++j) g(i, j) = a.gram()(i, j);
  for (int i = 0; i < b.rank(); ++i)
    for (int j = 0; j < b.rank(); ++j) g(a.rank() + i, a.rank() + j) = b.gram()(i, j);
  std::string label;
  if (!a.label().empty() && !b.label().empty()) label = a.label() + "+" + b.label();
  return Lattice(g, label, a.degenerate() || b.degenerate());
}

Lattice rescale(const Lattice& l, const Int& s) {
  if (s == 0) fail(errc::invalid_params, "rescale by zero");
  IntMat g = l.gram();
  for (auto& x : g.a) x *= s;
  return Lattice(g, l.label(), l.degenerate());
}

Lattice change_basis(const Lattice& l, const IntMat& p) {
  IntMat g = p.transposed() * l.gram() * p;
  return Lattice(g, l.label(), /*allow_degenerate=*/l.degenerate());
}

Lattice hyperbolic_plane() { return Lattice(IntMat{{0, 1}, {1, 0}}, "U"); }

Lattice root_lattice_A(int n) {
  if (n < 1) fail(errc::invalid_params, "A_n needs n >= 1");
  IntMat g(n, n);
  for (int i = 0; i < n; ++i) {
    g(i, i) = -2;
    if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = 1;
  }
  return Lattice(g, "A" + std::to_string(n));
}

Lattice root_lattice_D(int n) {
  if (n < 4) fail(errc::invalid_params, "D_n needs n >= 4");
  IntMat g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = -2;
  // chain 0..n-2, with node n-1 hanging off node n-3
  for (int i = 0; i + 1 < n - 1; ++i) g(i, i + 1) = g(i + 1, i) = 1;
  g(n - 3, n - 1) = g(n - 1, n - 3) = 1;
  return Lattice(g, "D" + std::to_string(n));
}

Lattice root_lattice_E(int n) {
  if (n < 6 || n > 8) fail(errc::invalid_params, "E_n needs n in {6,7,8}");
  IntMat g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = -2;
  // chain 0..n-2, with node n-1 hanging off node 2
  for (int i = 0; i + 1 < n - 1; ++i) g(i, i + 1) = g(i + 1, i) = 1;
  g(2, n - 1) = g(n - 1, 2) = 1;
  return Lattice(g, "E" + std::to_string(n));
}

Lattice diagonal_lattice(const Vec& diag) {
  int n = static_cast<int>(diag.size());
  IntMat g(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = diag[i];
  return Lattice(g);
}

}  // namespace k3fib
