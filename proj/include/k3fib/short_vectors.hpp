#pragma once

#include <utility>
#include <vector>

#include "k3fib/lattice.hpp"

namespace k3fib {

// Complete list of v with v.v = t in a definite lattice, one representative per
// {v,-v} pair (the lexicographically larger one), sorted lexicographically.
// Exact rational Cholesky bounds drive the enumeration; no floating point.
std::vector<Vec> vectors_of_norm(const Lattice& l, const Int& t);

struct AdeComponent {
  char family = 'A';  // 'A', 'D' or 'E'
  int index = 0;
  bool operator==(const AdeComponent&) const = default;
  auto operator<=>(const AdeComponent&) const = default;
};

std::string ade_name(const std::vector<AdeComponent>& components);

// Direct sum of standard negative definite root lattices.
Lattice ade_lattice(const std::vector<AdeComponent>& components);

struct RootDecomposition {
  std::vector<AdeComponent> components;  // sorted
  int total_rank = 0;
  std::vector<Vec> simple_roots;  // in the input lattice's coordinates
};

// Sublattice generated by the norm -2 vectors of a negative definite lattice,
// with its ADE decomposition read off the Cartan matrix of the simple roots.
std::pair<Sublattice, RootDecomposition> root_sublattice(const Lattice& n);

// True iff the roots span full rank, i.e. N is an overlattice of a root lattice.
bool is_root_overlattice(const Lattice& n);

}  // namespace k3fib
