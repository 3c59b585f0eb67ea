#pragma once

#include <string>
#include <vector>

#include "k3fib/matrix.hpp"

namespace k3fib {

// An even integral lattice presented by the Gram matrix of a fixed basis.
// Values are immutable after construction; all operations below are pure.
class Lattice {
 public:
  Lattice() = default;
  // Validates symmetry and even diagonal. Degenerate Gram matrices are only
  // accepted when explicitly requested (curve-class spans, orthogonal parts).
  explicit Lattice(IntMat gram, std::string label = "", bool allow_degenerate = false);

  int rank() const { return gram_.rows; }
  const IntMat& gram() const { return gram_; }
  const std::string& label() const { return label_; }
  const Int& det() const { return det_; }
  Int disc() const { return abs(det_); }
  bool degenerate() const { return det_ == 0; }

  Int inner(const Vec& x, const Vec& y) const;
  Int norm_of(const Vec& x) const { return inner(x, x); }

  Lattice relabeled(std::string label) const {
    Lattice l = *this;
    l.label_ = std::move(label);
    return l;
  }

 private:
  IntMat gram_;
  std::string label_;
  Int det_ = 0;
};

struct Signature {
  int n_plus = 0;
  int n_zero = 0;
  int n_minus = 0;
  bool operator==(const Signature&) const = default;
};

// Sylvester inertia by exact symmetric pivoting over the rationals.
Signature signature(const Lattice& l);

bool is_positive_definite(const Lattice& l);
bool is_negative_definite(const Lattice& l);
bool is_definite(const Lattice& l);
// (1, r-1): the shape of the Picard lattice of a projective K3.
bool is_hyperbolic(const Lattice& l);

inline Int determinant(const Lattice& l) {
  if (l.rank() > 0 && l.degenerate()) fail(errc::degenerate_lattice, "determinant of degenerate lattice");
  return l.det();
}

bool is_primitive(const Vec& v);

// Positive generator of the pairing ideal v.L; errors on v = 0.
Int divisibility(const Lattice& l, const Vec& v);

// A sublattice presented on its own basis together with the column matrix
// embedding that basis into the ambient lattice's coordinates.
struct Sublattice {
  Lattice lattice;
  IntMat embedding;  // ambient_rank x sub_rank
};

// Saturated sublattice {x : x.v = 0} with its induced (possibly degenerate) Gram.
Sublattice orthogonal_complement(const Lattice& l, const Vec& v);

// Saturated sublattice orthogonal to every given vector.
Sublattice orthogonal_complement_all(const Lattice& l, const std::vector<Vec>& vs);

// F^perp / <F> for a primitive isotropic F in a hyperbolic lattice: the
// negative definite lattice of rank r-2 carrying the fibration's fiber geometry.
Lattice isotropic_quotient(const Lattice& l, const Vec& f);

Lattice direct_sum(const Lattice& a, const Lattice& b);
Lattice rescale(const Lattice& l, const Int& s);

// Gram after the unimodular change of basis gram -> P^T gram P.
Lattice change_basis(const Lattice& l, const IntMat& p);

// standard building blocks (negative definite ADE, hyperbolic plane, diagonal)
Lattice hyperbolic_plane();                 // U = [[0,1],[1,0]]
Lattice root_lattice_A(int n);              // negative definite
Lattice root_lattice_D(int n);              // n >= 4
Lattice root_lattice_E(int n);              // n in {6,7,8}
Lattice diagonal_lattice(const Vec& diag);  // even entries

}  // namespace k3fib
