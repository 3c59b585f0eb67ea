#include "k3fib/dynkin.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace k3fib {

namespace {
constexpr int kMaxVertices = 24;
}

DualGraph make_dual_graph(std::string label, std::vector<std::string> vertices, IntMat weights) {
  int n = static_cast<int>(vertices.size());
  if (n > kMaxVertices) fail(errc::graph_too_large, "dual graphs are limited to 24 vertices");
  if (weights.rows != n || weights.cols != n) fail(errc::invalid_params, "weight matrix shape mismatch");
  for (int i = 0; i < n; ++i) {
    if (weights(i, i) != -2) fail(errc::invalid_params, "every vertex must be a (-2)-curve");
    for (int j = i + 1; j < n; ++j) {
      if (weights(i, j) != weights(j, i)) fail(errc::invalid_params, "weights must be symmetric");
      if (weights(i, j) < 0) fail(errc::invalid_params, "off-diagonal weights must be >= 0");
    }
  }
  return DualGraph{std::move(label), std::move(vertices), std::move(weights)};
}

std::string affine_kind_name(AffineKind kind, int index) {
  switch (kind) {
    case AffineKind::A: return "~A" + std::to_string(index);
    case AffineKind::D: return "~D" + std::to_string(index);
    case AffineKind::E6: return "~E6";
    case AffineKind::E7: return "~E7";
    case AffineKind::E8: return "~E8";
  }
  return "?";
}

namespace {

// abstract template: weights among template vertices (diagonal -2 implied)
struct Template {
  AffineKind kind;
  int index;
  int size;
  std::vector<std::vector<Int>> w;  // off-diagonal weights
  std::vector<Int> mult;

  void init(int n) {
    size = n;
    w.assign(n, std::vector<Int>(n, Int(0)));
    mult.assign(n, Int(1));
  }
  void edge(int a, int b, Int weight = Int(1)) { w[a][b] = w[b][a] = weight; }

  // the template's own fiber class must be isotropic and orthogonal to every vertex
  void validate() const {
    for (int i = 0; i < size; ++i) {
      Int s = -2 * mult[i];
      for (int j = 0; j < size; ++j)
        if (j != i) s += w[i][j] * mult[j];
      if (s != 0) fail(errc::internal, "template multiplicities are wrong for " + affine_kind_name(kind, index));
    }
  }
};

Template make_affine_A(int n) {
  Template t{AffineKind::A, n, 0, {}, {}};
  if (n == 1) {
    t.init(2);
    t.edge(0, 1, Int(2));
  } else {
    t.init(n + 1);
    for (int i = 0; i <= n; ++i) t.edge(i, (i + 1) % (n + 1));
  }
  t.validate();
  return t;
}

Template make_affine_D(int n) {
  // leaves 0,1 on the first path vertex, leaves 2,3 on the last; path = 4..4+n-4
  Template t{AffineKind::D, n, 0, {}, {}};
  t.init(n + 1);
  int path = n - 3;
  int first = 4, last = 4 + path - 1;
  for (int i = 0; i < path; ++i) t.mult[4 + i] = 2;
  t.edge(0, first);
  t.edge(1, first);
  t.edge(2, last);
  t.edge(3, last);
  for (int i = 0; i + 1 < path; ++i) t.edge(4 + i, 4 + i + 1);
  t.validate();
  return t;
}

Template make_affine_E(int n) {
  Template t{n == 6 ? AffineKind::E6 : n == 7 ? AffineKind::E7 : AffineKind::E8, n, 0, {}, {}};
  t.init(n + 1);
  if (n == 6) {
    // center 0 (3); arms (1,2), (3,4), (5,6) with marks (2,1)
    t.mult = {3, 2, 1, 2, 1, 2, 1};
    t.edge(0, 1);
    t.edge(1, 2);
    t.edge(0, 3);
    t.edge(3, 4);
    t.edge(0, 5);
    t.edge(5, 6);
  } else if (n == 7) {
    // path 0..6 with marks 1,2,3,4,3,2,1 and branch 7 (2) on vertex 3
    t.mult = {1, 2, 3, 4, 3, 2, 1, 2};
    for (int i = 0; i < 6; ++i) t.edge(i, i + 1);
    t.edge(3, 7);
  } else {
    // center 0 (6); arms [1](3), [2,3](4,2), [4..8](5,4,3,2,1)
    t.mult = {6, 3, 4, 2, 5, 4, 3, 2, 1};
    t.edge(0, 1);
    t.edge(0, 2);
    t.edge(2, 3);
    t.edge(0, 4);
    t.edge(4, 5);
    t.edge(5, 6);
    t.edge(6, 7);
    t.edge(7, 8);
  }
  t.validate();
  return t;
}

// induced-subgraph matcher: embeds the template so that all pairwise weights
// (edges and non-edges) agree exactly
void match_template(const DualGraph& g, const Template& t, std::vector<ExtendedDiagram>& out,
                    std::set<std::vector<int>>& seen) {
  int n = static_cast<int>(g.vertices.size());
  if (t.size > n) return;

  // map template vertices in an order that keeps each new vertex adjacent to a mapped one
  std::vector<int> order;
  std::vector<bool> placed(t.size, false);
  order.push_back(0);
  placed[0] = true;
  while (static_cast<int>(order.size()) < t.size) {
    bool advanced = false;
    for (int v = 0; v < t.size && !advanced; ++v) {
      if (placed[v]) continue;
      for (int u : order)
        if (t.w[u][v] != 0) {
          order.push_back(v);
          placed[v] = true;
          advanced = true;
          break;
        }
    }
    if (!advanced) fail(errc::internal, "template is not connected");
  }

  std::vector<int> image(t.size, -1);
  std::vector<bool> used(n, false);

  std::function<void(int)> rec = [&](int depth) {
    if (depth == t.size) {
      std::vector<int> verts;
      verts.reserve(t.size);
      for (int v = 0; v < t.size; ++v) verts.push_back(image[v]);
      std::vector<int> key = verts;
      std::sort(key.begin(), key.end());
      if (!seen.insert(key).second) return;
      ExtendedDiagram d;
      d.kind = t.kind;
      d.index = t.index;
      // store vertices sorted, multiplicities aligned
      std::vector<std::pair<int, Int>> pairs;
      for (int v = 0; v < t.size; ++v) pairs.emplace_back(image[v], t.mult[v]);
      std::sort(pairs.begin(), pairs.end());
      for (auto& [vv, mm] : pairs) {
        d.vertices.push_back(vv);
        d.multiplicities.push_back(mm);
      }
      out.push_back(std::move(d));
      return;
    }
    int tv = order[depth];
    for (int gv = 0; gv < n; ++gv) {
      if (used[gv]) continue;
      bool ok = true;
      for (int d2 = 0; d2 < depth && ok; ++d2) {
        int tu = order[d2];
        if (g.weights(gv, image[tu]) != t.w[tv][tu]) ok = false;
      }
      if (!ok) continue;
      image[tv] = gv;
      used[gv] = true;
      rec(depth + 1);
      used[gv] = false;
      image[tv] = -1;
    }
  };
  rec(0);
}

}  // namespace

std::vector<ExtendedDiagram> find_extended_diagrams(const DualGraph& g) {
  int n = static_cast<int>(g.vertices.size());
  if (n > kMaxVertices) fail(errc::graph_too_large, "dual graphs are limited to 24 vertices");
  std::vector<ExtendedDiagram> out;
  std::set<std::vector<int>> seen;

  for (int k = 1; k + 1 <= n; ++k) match_template(g, make_affine_A(k), out, seen);
  for (int k = 4; k + 1 <= n; ++k) match_template(g, make_affine_D(k), out, seen);
  for (int k = 6; k <= 8; ++k)
    if (k + 1 <= n) match_template(g, make_affine_E(k), out, seen);

  std::sort(out.begin(), out.end(), [](const ExtendedDiagram& a, const ExtendedDiagram& b) {
    if (a.vertices != b.vertices) return a.vertices < b.vertices;
    return a.index < b.index;
  });
  return out;
}

Vec fiber_class(const DualGraph& g, const ExtendedDiagram& d) {
  int n = static_cast<int>(g.vertices.size());
  Vec f(n, Int(0));
  for (size_t i = 0; i < d.vertices.size(); ++i) f[d.vertices[i]] = d.multiplicities[i];
  // isotropy against its own components
  for (size_t i = 0; i < d.vertices.size(); ++i) {
    Int s = 0;
    for (int j = 0; j < n; ++j) s += g.weights(d.vertices[i], j) * f[j];
    if (s != 0) fail(errc::internal, "fiber class not orthogonal to its components");
  }
  return f;
}

FibrationCount count_fibrations(const DualGraph& g) {
  FibrationCount res;
  res.diagrams = find_extended_diagrams(g);
  int m = static_cast<int>(res.diagrams.size());
  if (m == 0) return res;

  std::vector<Vec> fibers;
  fibers.reserve(m);
  for (const ExtendedDiagram& d : res.diagrams) fibers.push_back(fiber_class(g, d));

  auto pairing = [&](int i, int j) {
    Int s = 0;
    for (int a = 0; a < g.weights.rows; ++a) {
      if (fibers[i][a] == 0) continue;
      for (int b = 0; b < g.weights.cols; ++b) s += fibers[i][a] * g.weights(a, b) * fibers[j][b];
    }
    return s;
  };

  // union by orthogonality, then verify the partition is consistent
  std::vector<int> group(m);
  for (int i = 0; i < m; ++i) group[i] = i;
  std::function<int(int)> find = [&](int x) { return group[x] == x ? x : group[x] = find(group[x]); };

  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Int p = pairing(i, j);
      if (p < 0) fail(errc::inconsistent_grouping, "negative fiber intersection");
      if (p == 0) group[find(i)] = find(j);
    }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      bool same = find(i) == find(j);
      Int p = pairing(i, j);
      if (same && p != 0)
        fail(errc::inconsistent_grouping, "orthogonality is not transitive on this graph");
      if (!same && p == 0) fail(errc::internal, "union-find missed an orthogonal pair");
    }

  std::map<int, std::vector<int>> buckets;
  for (int i = 0; i < m; ++i) buckets[find(i)].push_back(i);
  for (auto& [root, members] : buckets) res.groups.push_back(members);
  std::sort(res.groups.begin(), res.groups.end());
  res.count = static_cast<int>(res.groups.size());
  return res;
}

}  // namespace k3fib
