#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "k3fib/lattice.hpp"

namespace k3fib {

// Finite quadratic form on the discriminant group L*/L of an even lattice:
// generators of orders d1 | d2 | ... | dk (each >= 2), q valued in Q/2Z and
// the induced bilinear form b in Q/Z. Elements are coordinate tuples mod the
// generator orders.
class FiniteQuadraticForm {
 public:
  FiniteQuadraticForm() = default;
  // qmat(i,j) = g_i . g_j for rational lifts g_i of the generators; the
  // diagonal matters mod 2, off-diagonal entries mod 1.
  FiniteQuadraticForm(std::vector<Int> orders, RatMat qmat);

  const std::vector<Int>& orders() const { return orders_; }
  int generators() const { return static_cast<int>(orders_.size()); }
  Int group_order() const;
  const RatMat& qmat() const { return qmat_; }

  Vec reduce(Vec x) const;
  Rat q(const Vec& x) const;              // in [0,2)
  Rat b(const Vec& x, const Vec& y) const;  // in [0,1)
  Int element_order(const Vec& x) const;

  // all group elements in lexicographic order; errors above the bound
  std::vector<Vec> all_elements(const Int& bound) const;

  bool operator==(const FiniteQuadraticForm& o) const { return orders_ == o.orders_ && qmat_ == o.qmat_; }

 private:
  std::vector<Int> orders_;
  RatMat qmat_;
};

// Discriminant group together with rational lifts of its generators into the
// coordinates of the source lattice (columns of `lifts`).
struct DiscriminantGroup {
  FiniteQuadraticForm form;
  RatMat lifts;  // rank x generators
};

DiscriminantGroup discriminant_group(const Lattice& l);
FiniteQuadraticForm discriminant_form(const Lattice& l);

// elements of exact order n with their q-values, lexicographic order
std::vector<std::pair<Vec, Rat>> elements_of_order(const FiniteQuadraticForm& f, const Int& n,
                                                   const Int& bound = 10000);

// first element of exact order n with q = 0, if any (n = 1 gives the zero element)
std::optional<Vec> isotropic_element_of_order(const FiniteQuadraticForm& f, const Int& n,
                                              const Int& bound = 10000);

// all subgroups H with q|_H = 0 and b|_{HxH} = 0 (including the trivial one),
// each given as its sorted element list, canonically ordered
std::vector<std::vector<Vec>> isotropic_subgroups(const FiniteQuadraticForm& f, const Int& bound = 10000);

// Groupwise isomorphism preserving q (hence b); brute-force generator matching
// with pruning on orders and q-values.
bool qform_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b, const Int& bound = 10000);

struct OverlatticeCert {
  Int index;               // [result : input]
  std::vector<Vec> glue;   // generators of the isotropic subgroup, as discriminant elements
  Lattice result;
  RatMat basis_in_input;   // columns express the result basis in input coordinates
};

// One certificate per nontrivial isotropic subgroup of the discriminant form.
std::vector<OverlatticeCert> even_overlattices(const Lattice& l, const Int& bound = 10000);

// The overlattice L[w/n] for primitive w; errors if w/n pairs non-integrally
// with L or the result fails to be even.
Lattice divide_vector(const Lattice& l, const Vec& w, const Int& n);

}  // namespace k3fib
