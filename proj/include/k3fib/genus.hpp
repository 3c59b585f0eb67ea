#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3fib/quadform.hpp"

namespace k3fib {

// Exact greedy basis reduction on a positive definite Gram matrix: repeated
// integer size-reduction steps plus sorting by diagonal, with a final sign
// normalization. Returns (reduced gram, transform) with transform^T G transform
// equal to the reduced gram. Output quality only affects speed downstream,
// never correctness.
std::pair<IntMat, IntMat> reduced_gram(const IntMat& g);

struct GenusTag {
  Signature sig;
  FiniteQuadraticForm disc_form;
};

// Equality as genus symbols: same signature and isomorphic discriminant forms
// (the even-lattice genus criterion).
bool same_genus_tag(const GenusTag& a, const GenusTag& b);

GenusTag genus_tag(const Lattice& l);

// Integer P with P^T gram_A P = gram_B, or absent. Exhaustive backtracking on
// short-vector candidate columns, so "absent" is a proof at these ranks.
std::optional<IntMat> is_isometric(const Lattice& a, const Lattice& b);

// All p-neighbors of a definite even lattice at an odd prime p not dividing
// the discriminant; output Grams are reduced and canonically ordered.
std::vector<Lattice> kneser_neighbors(const Lattice& l, const Int& p);

struct GenusEffort {
  int class_cap = 64;  // classes explored before giving up
};

enum class GenusStatus { UniqueInGenus, NotUnique, Inconclusive };

struct GenusVerdict {
  GenusStatus status = GenusStatus::Inconclusive;
  std::optional<Lattice> witness;      // second class, when found
  std::vector<Lattice> classes_found;  // in discovery order
  std::string reason;
};

// Neighbor closure at the first two valid odd primes, bucketing by isometry.
// Rank >= 11 is dispatched by the single-class rank bound without search.
GenusVerdict unique_in_genus(const Lattice& w, const GenusEffort& effort = {});

}  // namespace k3fib
