#include "k3fib/quadform.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace k3fib {

FiniteQuadraticForm::FiniteQuadraticForm(std::vector<Int> orders, RatMat qmat)
    : orders_(std::move(orders)), qmat_(std::move(qmat)) {
  int k = static_cast<int>(orders_.size());
  if (qmat_.rows != k || qmat_.cols != k) fail(errc::invalid_params, "qmat shape mismatch");
  for (int i = 0; i < k; ++i) {
    if (orders_[i] < 2) fail(errc::invalid_params, "generator orders must be >= 2");
    if (i + 1 < k && orders_[i + 1] % orders_[i] != 0)
      fail(errc::invalid_params, "generator orders must form a divisibility chain");
  }
  // well-definedness mod the generator orders, then canonical reduction
  for (int i = 0; i < k; ++i) {
    Rat dq = Rat(orders_[i] * orders_[i]) * qmat_(i, i);
    dq.canonicalize();
    if (dq.get_den() != 1 || dq.get_num() % 2 != 0) fail(errc::invalid_params, "q is not defined mod 2");
    for (int j = 0; j < k; ++j) {
      Rat db = Rat(orders_[i]) * qmat_(i, j);
      db.canonicalize();
      if (db.get_den() != 1) fail(errc::invalid_params, "b is not defined mod 1");
    }
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) qmat_(i, j) = i == j ? mod2(qmat_(i, j)) : mod1(qmat_(i, j));
}

Int FiniteQuadraticForm::group_order() const {
  Int n = 1;
  for (const Int& d : orders_) n *= d;
  return n;
}

Vec FiniteQuadraticForm::reduce(Vec x) const {
  if (static_cast<int>(x.size()) != generators()) fail(errc::invalid_params, "element arity mismatch");
  for (int i = 0; i < generators(); ++i) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), x[i].get_mpz_t(), orders_[i].get_mpz_t());
    x[i] = r;
  }
  return x;
}

Rat FiniteQuadraticForm::q(const Vec& x) const {
  Vec v = reduce(x);
  Rat s = 0;
  for (int i = 0; i < generators(); ++i) {
    if (v[i] == 0) continue;
    s += Rat(v[i] * v[i]) * qmat_(i, i);
    for (int j = i + 1; j < generators(); ++j) s += Rat(2 * v[i] * v[j]) * qmat_(i, j);
  }
  return mod2(s);
}

Rat FiniteQuadraticForm::b(const Vec& x, const Vec& y) const {
  Vec u = reduce(x), v = reduce(y);
  Rat s = 0;
  for (int i = 0; i < generators(); ++i)
    for (int j = 0; j < generators(); ++j) {
      if (u[i] == 0 || v[j] == 0) continue;
      s += Rat(u[i] * v[j]) * qmat_(i, j);
    }
  return mod1(s);
}

Int FiniteQuadraticForm::element_order(const Vec& x) const {
  Vec v = reduce(x);
  Int o = 1;
  for (int i = 0; i < generators(); ++i) o = lcm(o, orders_[i] / gcd(orders_[i], v[i]));
  return o;
}

std::vector<Vec> FiniteQuadraticForm::all_elements(const Int& bound) const {
  Int n = group_order();
  if (n > bound) fail(errc::group_too_large, "discriminant group of order " + n.get_str());
  std::vector<Vec> out;
  Vec cur(generators(), Int(0));
  for (;;) {
    out.push_back(cur);
    int i = generators() - 1;
    while (i >= 0) {
      cur[i] += 1;
      if (cur[i] < orders_[i]) break;
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

DiscriminantGroup discriminant_group(const Lattice& l) {
  if (l.rank() > 0 && l.degenerate()) fail(errc::degenerate_lattice, "discriminant group needs det != 0");
  SnfResult s = smith_normal_form(l.gram());
  std::vector<Int> orders;
  std::vector<int> cols;
  for (int i = 0; i < l.rank(); ++i) {
    if (s.diag[i] >= 2) {
      orders.push_back(s.diag[i]);
      cols.push_back(i);
    }
  }
  int k = static_cast<int>(orders.size());
  RatMat lifts(l.rank(), k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < l.rank(); ++i) {
      lifts(i, j) = Rat(s.right(i, cols[j]), orders[j]);
      lifts(i, j).canonicalize();
    }
  RatMat qmat(k, k);
  RatMat g = to_rational(l.gram());
  RatMat pair = lifts.transposed() * g * lifts;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) qmat(i, j) = pair(i, j);
  return DiscriminantGroup{FiniteQuadraticForm(std::move(orders), std::move(qmat)), std::move(lifts)};
}

FiniteQuadraticForm discriminant_form(const Lattice& l) { return discriminant_group(l).form; }

std::vector<std::pair<Vec, Rat>> elements_of_order(const FiniteQuadraticForm& f, const Int& n,
                                                   const Int& bound) {
  if (n < 1) fail(errc::invalid_params, "order must be >= 1");
  std::vector<std::pair<Vec, Rat>> out;
  for (const Vec& x : f.all_elements(bound))
    if (f.element_order(x) == n) out.emplace_back(x, f.q(x));
  return out;
}

std::optional<Vec> isotropic_element_of_order(const FiniteQuadraticForm& f, const Int& n, const Int& bound) {
  for (auto& [x, qx] : elements_of_order(f, n, bound))
    if (qx == 0) return x;
  return std::nullopt;
}

namespace {

std::vector<Vec> close_under_addition(const FiniteQuadraticForm& f, std::vector<Vec> gens) {
  std::set<Vec> h;
  h.insert(Vec(f.generators(), Int(0)));
  std::vector<Vec> queue(h.begin(), h.end());
  for (const Vec& g : gens) queue.push_back(g);
  while (!queue.empty()) {
    Vec v = f.reduce(queue.back());
    queue.pop_back();
    if (!h.insert(v).second) continue;
    for (const Vec& w : h) {
      Vec sum(v.size());
      for (size_t i = 0; i < v.size(); ++i) sum[i] = v[i] + w[i];
      sum = f.reduce(sum);
      if (!h.count(sum)) queue.push_back(std::move(sum));
    }
  }
  return std::vector<Vec>(h.begin(), h.end());
}

}  // namespace

std::vector<std::vector<Vec>> isotropic_subgroups(const FiniteQuadraticForm& f, const Int& bound) {
  std::vector<Vec> candidates;
  for (const Vec& x : f.all_elements(bound)) {
    if (is_zero_vec(x)) continue;
    if (f.q(x) == 0) candidates.push_back(x);
  }
  std::vector<Vec> trivial{Vec(f.generators(), Int(0))};
  std::set<std::vector<Vec>> seen{trivial};
  std::vector<std::vector<Vec>> queue{trivial};
  while (!queue.empty()) {
    std::vector<Vec> h = queue.back();
    queue.pop_back();
    std::set<Vec> hset(h.begin(), h.end());
    for (const Vec& x : candidates) {
      if (hset.count(x)) continue;
      bool ok = true;
      for (const Vec& w : h)
        if (f.b(x, w) != 0) {
          ok = false;
          break;
        }
      if (!ok) continue;
      std::vector<Vec> gens = h;
      gens.push_back(x);
      std::vector<Vec> bigger = close_under_addition(f, gens);
      if (seen.insert(bigger).second) queue.push_back(bigger);
    }
  }
  std::vector<std::vector<Vec>> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

namespace {

// small generating set: greedily add elements not already generated
std::vector<Vec> generating_set(const FiniteQuadraticForm& f, const std::vector<Vec>& subgroup) {
  std::vector<Vec> sorted = subgroup;
  std::sort(sorted.begin(), sorted.end(), [&](const Vec& a, const Vec& b) {
    Int oa = f.element_order(a), ob = f.element_order(b);
    if (oa != ob) return oa > ob;
    return a < b;
  });
  std::vector<Vec> gens;
  std::set<Vec> span{Vec(f.generators(), Int(0))};
  for (const Vec& x : sorted) {
    if (span.count(x)) continue;
    gens.push_back(x);
    auto closed = close_under_addition(f, gens);
    span = std::set<Vec>(closed.begin(), closed.end());
    if (span.size() == subgroup.size()) break;
  }
  return gens;
}

}  // namespace

bool qform_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b, const Int& bound) {
  if (a.orders() != b.orders()) return false;
  if (a.generators() == 0) return true;

  std::vector<Vec> ea = a.all_elements(bound), eb = b.all_elements(bound);
  // invariant prune: multiset of (order, q) pairs must agree
  auto profile = [](const FiniteQuadraticForm& f, const std::vector<Vec>& els) {
    std::vector<std::pair<Int, Rat>> p;
    p.reserve(els.size());
    for (const Vec& x : els) p.emplace_back(f.element_order(x), f.q(x));
    std::sort(p.begin(), p.end(), [](const auto& l, const auto& r) {
      if (l.first != r.first) return l.first < r.first;
      return l.second < r.second;
    });
    return p;
  };
  if (profile(a, ea) != profile(b, eb)) return false;

  // generators of a are the standard basis tuples
  int k = a.generators();
  std::vector<Vec> gens(k, Vec(k, Int(0)));
  for (int i = 0; i < k; ++i) gens[i][i] = 1;

  // candidate images, bucketed per generator
  std::vector<std::vector<Vec>> cand(k);
  for (int i = 0; i < k; ++i) {
    Int want_order = a.orders()[i];
    Rat want_q = a.q(gens[i]);
    for (const Vec& y : eb)
      if (b.element_order(y) == want_order && b.q(y) == want_q) cand[i].push_back(y);
    if (cand[i].empty()) return false;
  }

  std::vector<Vec> image(k);
  auto spans_whole = [&](const std::vector<Vec>& img) {
    auto closed = close_under_addition(b, img);
    return Int(static_cast<long>(closed.size())) == b.group_order();
  };

  std::vector<int> choice(k, -1);
  int level = 0;
  while (level >= 0) {
    int next = ++choice[level];
    if (next >= static_cast<int>(cand[level].size())) {
      choice[level] = -1;
      --level;
      continue;
    }
    image[level] = cand[level][next];
    bool ok = true;
    for (int j = 0; j < level && ok; ++j)
      if (b.b(image[level], image[j]) != a.b(gens[level], gens[j])) ok = false;
    if (!ok) continue;
    if (level + 1 == k) {
      if (spans_whole(image)) return true;
      continue;
    }
    ++level;
  }
  return false;
}

std::vector<OverlatticeCert> even_overlattices(const Lattice& l, const Int& bound) {
  if (l.rank() > 0 && l.degenerate()) fail(errc::degenerate_lattice, "overlattices need det != 0");
  DiscriminantGroup dg = discriminant_group(l);
  std::vector<OverlatticeCert> out;
  for (const std::vector<Vec>& h : isotropic_subgroups(dg.form, bound)) {
    if (h.size() <= 1) continue;
    std::vector<Vec> gens = generating_set(dg.form, h);

    // rational spanning set: lattice basis plus lifted glue vectors
    Int denom = 1;
    for (const Vec& g : gens) denom = lcm(denom, dg.form.element_order(g));
    int r = l.rank();
    IntMat span(r, r + static_cast<int>(gens.size()));
    for (int i = 0; i < r; ++i) span(i, i) = denom;
    for (int j = 0; j < static_cast<int>(gens.size()); ++j) {
      for (int i = 0; i < r; ++i) {
        Rat x = 0;
        for (int t = 0; t < dg.form.generators(); ++t) x += Rat(gens[j][t]) * dg.lifts(i, t);
        x *= Rat(denom);
        x.canonicalize();
        if (x.get_den() != 1) fail(errc::internal, "glue lift has unexpected denominator");
        span(i, r + j) = x.get_num();
      }
    }
    IntMat basis = column_lattice_basis(span);
    if (basis.cols != r) fail(errc::internal, "overlattice basis has wrong rank");
    IntMat big = basis.transposed() * l.gram() * basis;
    IntMat gram(r, r);
    Int d2 = denom * denom;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        if (big(i, j) % d2 != 0) fail(errc::internal, "overlattice Gram is not integral");
        gram(i, j) = big(i, j) / d2;
      }
    Lattice result(gram, l.label().empty() ? "" : l.label() + "^+");

    Int index(static_cast<long>(h.size()));
    if (result.disc() * index * index != l.disc()) fail(errc::internal, "overlattice index mismatch");

    RatMat basis_in_input(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        basis_in_input(i, j) = Rat(basis(i, j), denom);
        basis_in_input(i, j).canonicalize();
      }
    out.push_back(OverlatticeCert{index, gens, std::move(result), std::move(basis_in_input)});
  }
  return out;
}

Lattice divide_vector(const Lattice& l, const Vec& w, const Int& n) {
  if (n < 1) fail(errc::invalid_params, "divisor must be >= 1");
  if (is_zero_vec(w)) fail(errc::zero_vector, "cannot divide the zero vector");
  if (!is_primitive(w)) fail(errc::not_primitive, "vector to divide must be primitive");
  if (n == 1) return l;
  if (divisibility(l, w) % n != 0)
    fail(errc::not_integral, "w/" + n.get_str() + " pairs non-integrally with the lattice");
  if (l.norm_of(w) % (2 * n * n) != 0)
    fail(errc::not_even, "w/" + n.get_str() + " has odd square");

  int r = l.rank();
  IntMat span(r, r + 1);
  for (int i = 0; i < r; ++i) span(i, i) = n;
  for (int i = 0; i < r; ++i) span(i, r) = w[i];
  IntMat basis = column_lattice_basis(span);
  if (basis.cols != r) fail(errc::internal, "divided lattice has wrong rank");
  IntMat big = basis.transposed() * l.gram() * basis;
  IntMat gram(r, r);
  Int n2 = n * n;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (big(i, j) % n2 != 0) fail(errc::internal, "divided Gram is not integral");
      gram(i, j) = big(i, j) / n2;
    }
  return Lattice(gram, l.label().empty() ? "" : l.label() + "/" + n.get_str());
}

}  // namespace k3fib
