#include "k3fib/short_vectors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace k3fib {

namespace {

// G = L^T D L with D positive diagonal and L unit upper triangular, all rational.
struct Cholesky {
  int n = 0;
  std::vector<Rat> d;
  RatMat mu;  // mu(i,j) for j > i
};

Cholesky rational_cholesky(const IntMat& g) {
  Cholesky c;
  c.n = g.rows;
  c.d.resize(c.n);
  RatMat a = to_rational(g);
  c.mu = RatMat(c.n, c.n);
  for (int i = 0; i < c.n; ++i) {
    c.d[i] = a(i, i);
    if (c.d[i] <= 0) fail(errc::indefinite_lattice, "enumeration requires a definite Gram matrix");
    for (int j = i + 1; j < c.n; ++j) c.mu(i, j) = a(i, j) / c.d[i];
    for (int k = i + 1; k < c.n; ++k)
      for (int l = k; l < c.n; ++l) {
        a(k, l) -= c.mu(i, k) * a(i, l);
        if (l != k) a(l, k) = a(k, l);
      }
  }
  return c;
}

// integers x with d (x + c)^2 <= bound; empty range flagged by lo > hi
void coord_range(const Rat& c, const Rat& d, const Rat& bound, Int& lo, Int& hi) {
  if (bound < 0) {
    lo = 1;
    hi = 0;
    return;
  }
  Rat s = bound / d;  // (x + c)^2 <= s
  // substitute y = q x + p with c = p/q, q > 0: y^2 <= s q^2
  Int p = c.get_num(), q = c.get_den();
  Rat rhs = s * Rat(q * q);
  Int m = isqrt_floor(floor_div(rhs.get_num(), rhs.get_den()));
  lo = ceil_div(-m - p, q);
  hi = floor_div(m - p, q);
}

void enumerate(const Cholesky& c, const Rat& target, int level, Vec& x, std::vector<Rat>& center,
               const Rat& remaining, std::vector<Vec>& out) {
  if (level < 0) {
    if (remaining == 0 && !is_zero_vec(x)) out.push_back(x);
    return;
  }
  Int lo, hi;
  coord_range(center[level], c.d[level], remaining, lo, hi);
  for (Int v = lo; v <= hi; ++v) {
    x[level] = v;
    Rat term = Rat(v) + center[level];
    Rat used = c.d[level] * term * term;
    if (level == 0) {
      if (used == remaining && !is_zero_vec(x)) out.push_back(x);
      continue;
    }
    std::vector<Rat> saved(level);
    for (int i = 0; i < level; ++i) {
      saved[i] = center[i];
      center[i] += c.mu(i, level) * Rat(v);
    }
    enumerate(c, target, level - 1, x, center, remaining - used, out);
    for (int i = 0; i < level; ++i) center[i] = saved[i];
  }
  x[level] = 0;
}

bool lex_less(const Vec& a, const Vec& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

Vec sign_representative(Vec v) {
  for (const Int& x : v) {
    if (x > 0) return v;
    if (x < 0) break;
  }
  for (Int& x : v) x = -x;
  return v;
}

}  // namespace

std::vector<Vec> vectors_of_norm(const Lattice& l, const Int& t) {
  if (l.rank() == 0) return {};
  Signature sig = signature(l);
  bool pos = sig.n_plus == l.rank();
  bool neg = sig.n_minus == l.rank();
  if (!pos && !neg) fail(errc::indefinite_lattice, "vectors_of_norm requires a definite lattice");

  IntMat g = l.gram();
  Int target = t;
  if (neg) {
    for (auto& x : g.a) x = -x;
    target = -target;
  }
  if (target < 0) return {};
  if (target == 0) return {};

  Cholesky c = rational_cholesky(g);
  Vec x(l.rank(), Int(0));
  std::vector<Rat> center(l.rank(), Rat(0));
  std::vector<Vec> raw;
  enumerate(c, Rat(target), l.rank() - 1, x, center, Rat(target), raw);

  std::set<Vec, decltype(&lex_less)> reps(&lex_less);
  for (Vec& v : raw) reps.insert(sign_representative(std::move(v)));
  return std::vector<Vec>(reps.begin(), reps.end());
}

std::string ade_name(const std::vector<AdeComponent>& components) {
  if (components.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < components.size(); ++i) {
    if (i) s += "+";
    s += components[i].family;
    s += std::to_string(components[i].index);
  }
  return s;
}

Lattice ade_lattice(const std::vector<AdeComponent>& components) {
  Lattice out(IntMat(0, 0));
  for (const AdeComponent& c : components) {
    Lattice block = c.family == 'A'   ? root_lattice_A(c.index)
                    : c.family == 'D' ? root_lattice_D(c.index)
                                      : root_lattice_E(c.index);
    out = out.rank() == 0 ? block : direct_sum(out, block);
  }
  return out.relabeled(ade_name(components));
}

namespace {

// identify the connected simply-laced tree given by an adjacency list
AdeComponent classify_component(const std::vector<std::vector<int>>& adj, const std::vector<int>& nodes) {
  int n = static_cast<int>(nodes.size());
  std::vector<int> degree(n, 0);
  int edges = 0;
  for (int i = 0; i < n; ++i) {
    for (int w : adj[nodes[i]]) {
      ++degree[i];
      ++edges;
    }
  }
  edges /= 2;
  if (edges != n - 1) fail(errc::internal, "root component is not a tree");
  int branches = 0, branch = -1;
  for (int i = 0; i < n; ++i) {
    if (degree[i] > 3) fail(errc::internal, "root component has a degree-4 vertex");
    if (degree[i] == 3) {
      ++branches;
      branch = i;
    }
  }
  if (branches == 0) return {'A', n};
  if (branches > 1) fail(errc::internal, "root component has two branch vertices");
  // arm lengths from the branch vertex
  std::vector<int> arms;
  for (int start : adj[nodes[branch]]) {
    int len = 1, prev = nodes[branch], cur = start;
    for (;;) {
      int next = -1;
      for (int w : adj[cur])
        if (w != prev) next = w;
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms.size() != 3) fail(errc::internal, "branch vertex arm count mismatch");
  if (arms[0] == 1 && arms[1] == 1) return {'D', arms[2] + 3};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return {'E', arms[2] + 4};
  fail(errc::internal, "component is not an ADE diagram");
}

}  // namespace

std::pair<Sublattice, RootDecomposition> root_sublattice(const Lattice& n) {
  if (!is_negative_definite(n) && n.rank() > 0)
    fail(errc::indefinite_lattice, "root sublattice requires a negative definite lattice");

  std::vector<Vec> reps = vectors_of_norm(n, Int(-2));
  RootDecomposition dec;
  if (reps.empty()) {
    return {Sublattice{Lattice(IntMat(0, 0)), IntMat(n.rank(), 0)}, dec};
  }

  // positive roots under the lexicographic functional: exactly the representatives
  std::set<Vec, decltype(&lex_less)> positive(&lex_less);
  for (const Vec& v : reps) positive.insert(v);

  // simple roots: positive roots that are not the sum of two positive roots
  std::vector<Vec> simple;
  for (const Vec& p : positive) {
    bool decomposable = false;
    for (const Vec& a : positive) {
      Vec diff(p.size());
      for (size_t i = 0; i < p.size(); ++i) diff[i] = p[i] - a[i];
      if (is_zero_vec(diff)) continue;
      if (positive.count(diff)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simple.push_back(p);
  }

  // Cartan graph on the simple roots (negative definite: off-diagonal pairings in {0,1})
  int m = static_cast<int>(simple.size());
  std::vector<std::vector<int>> adj(m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Int p = n.inner(simple[i], simple[j]);
      if (p == 0) continue;
      if (p != 1 && p != -1) fail(errc::internal, "unexpected pairing between simple roots");
      adj[i].push_back(j);
      adj[j].push_back(i);
    }

  // connected components -> ADE types
  std::vector<int> comp(m, -1);
  int ncomp = 0;
  for (int i = 0; i < m; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (comp[w] < 0) {
          comp[w] = ncomp;
          stack.push_back(w);
        }
    }
    ++ncomp;
  }
  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> nodes;
    for (int i = 0; i < m; ++i)
      if (comp[i] == c) nodes.push_back(i);
    dec.components.push_back(classify_component(adj, nodes));
  }
  std::sort(dec.components.begin(), dec.components.end());
  dec.total_rank = m;
  dec.simple_roots = simple;

  IntMat span(n.rank(), m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n.rank(); ++i) span(i, j) = simple[j][i];
  IntMat gram = span.transposed() * n.gram() * span;
  return {Sublattice{Lattice(gram, ade_name(dec.components)), span}, dec};
}

bool is_root_overlattice(const Lattice& n) {
  auto [sub, dec] = root_sublattice(n);
  return dec.total_rank == n.rank();
}

}  // namespace k3fib
