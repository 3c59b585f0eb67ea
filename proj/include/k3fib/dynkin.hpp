#pragma once

#include <string>
#include <vector>

#include "k3fib/matrix.hpp"

namespace k3fib {

// Weighted dual graph of (-2)-curves: symmetric intersection matrix with all
// diagonal entries -2 and non-negative off-diagonal weights.
struct DualGraph {
  std::string label;
  std::vector<std::string> vertices;
  IntMat weights;
};

DualGraph make_dual_graph(std::string label, std::vector<std::string> vertices, IntMat weights);

enum class AffineKind { A, D, E6, E7, E8 };
std::string affine_kind_name(AffineKind kind, int index);

// An extended Dynkin diagram found inside the graph: vertex subset plus the
// standard fiber multiplicities. The induced subgraph matches the template
// exactly.
struct ExtendedDiagram {
  AffineKind kind = AffineKind::A;
  int index = 0;  // A_n: n >= 1; D_n: n >= 4; E: 6/7/8
  std::vector<int> vertices;
  std::vector<Int> multiplicities;  // aligned with `vertices`
};

// All extended Dynkin subdiagrams, deduplicated and canonically ordered.
std::vector<ExtendedDiagram> find_extended_diagrams(const DualGraph& g);

// F = sum multiplicity_i C_i as a vector over all vertices; F.F = 0 and
// F.C = 0 for every C in the diagram.
Vec fiber_class(const DualGraph& g, const ExtendedDiagram& d);

struct FibrationCount {
  int count = 0;
  std::vector<std::vector<int>> groups;  // indices into the diagram list
  std::vector<ExtendedDiagram> diagrams;
};

// Partition the diagrams into fibrations: two diagrams with orthogonal fiber
// classes bound the same fibration; distinct fibrations must meet positively.
FibrationCount count_fibrations(const DualGraph& g);

}  // namespace k3fib
