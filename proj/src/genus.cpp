#include "k3fib/genus.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "k3fib/short_vectors.hpp"

namespace k3fib {

std::pair<IntMat, IntMat> reduced_gram(const IntMat& g) {
  int n = g.rows;
  IntMat a = g;
  IntMat u = IntMat::identity(n);

  auto apply = [&](int i, int j, const Int& c) {
    // b_i += c b_j
    a.add_row(i, j, c);
    a.add_col(i, j, c);
    u.add_col(i, j, c);
  };

  for (int pass = 0; pass < 1000; ++pass) {
    bool changed = false;
    // size-reduce every pair, greedily shrinking diagonal entries
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j || a(j, j) == 0) continue;
        Int c = round_div(a(i, j), a(j, j));
        if (c == 0) continue;
        Int new_norm = a(i, i) - 2 * c * a(i, j) + c * c * a(j, j);
        if (new_norm < a(i, i)) {
          apply(i, j, -c);
          changed = true;
        }
      }
    // keep diagonal sorted ascending (stable under ties)
    for (int i = 0; i + 1 < n; ++i)
      if (a(i + 1, i + 1) < a(i, i)) {
        a.swap_rows(i, i + 1);
        a.swap_cols(i, i + 1);
        u.swap_cols(i, i + 1);
        changed = true;
      }
    if (!changed) break;
  }
  // sign normalization: first nonzero off-diagonal entry of each column made positive
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i == j || a(i, j) == 0) continue;
      if (a(i, j) < 0) {
        a.negate_row(j);
        a.negate_col(j);
        u.negate_col(j);
      }
      break;
    }
  }
  return {a, u};
}

bool same_genus_tag(const GenusTag& a, const GenusTag& b) {
  if (!(a.sig == b.sig)) return false;
  return qform_isomorphic(a.disc_form, b.disc_form);
}

GenusTag genus_tag(const Lattice& l) {
  if (l.rank() > 0 && l.degenerate()) fail(errc::degenerate_lattice, "genus tag needs det != 0");
  return GenusTag{signature(l), discriminant_form(l)};
}

namespace {

// positive definite image of a definite lattice, remembering the flip
struct DefiniteView {
  IntMat gram;
  bool flipped = false;
};

DefiniteView positive_view(const Lattice& l) {
  if (l.rank() == 0) return {l.gram(), false};
  if (is_positive_definite(l)) return {l.gram(), false};
  if (is_negative_definite(l)) {
    IntMat g = l.gram();
    for (auto& x : g.a) x = -x;
    return {g, true};
  }
  fail(errc::indefinite_lattice, "definite lattice required");
}

}  // namespace

std::optional<IntMat> is_isometric(const Lattice& a, const Lattice& b) {
  if (a.rank() != b.rank()) return std::nullopt;
  if (a.disc() != b.disc()) return std::nullopt;
  if (a.rank() == 0) return IntMat(0, 0);
  DefiniteView va = positive_view(a), vb = positive_view(b);
  if (va.flipped != vb.flipped) return std::nullopt;

  int n = a.rank();
  auto [ga, ua] = reduced_gram(va.gram);
  auto [gb, ub] = reduced_gram(vb.gram);

  auto finish = [&](const IntMat& p_red) -> std::optional<IntMat> {
    // p_red maps reduced-B coordinates into reduced-A coordinates
    IntMat p = ua * p_red * inverse_unimodular(ub);
    if (!(p.transposed() * a.gram() * p == b.gram())) fail(errc::internal, "isometry verification failed");
    return p;
  };

  if (ga == gb) return finish(IntMat::identity(n));

  Lattice la(ga, "", false);
  // candidate columns: vectors of the required norms, with signs
  std::map<Int, std::vector<Vec>> by_norm;
  for (int j = 0; j < n; ++j) {
    Int t = gb(j, j);
    if (by_norm.count(t)) continue;
    std::vector<Vec> reps = vectors_of_norm(la, t);
    std::vector<Vec> full;
    full.reserve(reps.size() * 2);
    for (const Vec& v : reps) {
      full.push_back(v);
      Vec m(v.size());
      for (size_t i = 0; i < v.size(); ++i) m[i] = -v[i];
      full.push_back(std::move(m));
    }
    by_norm[t] = std::move(full);
  }

  // most-constrained column first
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    size_t cx = by_norm[gb(x, x)].size(), cy = by_norm[gb(y, y)].size();
    if (cx != cy) return cx < cy;
    return x < y;
  });

  // precompute dual vectors ga*v per candidate for O(n) inner products
  std::map<Int, std::vector<Vec>> dual;
  for (auto& [t, vecs] : by_norm) {
    std::vector<Vec> d;
    d.reserve(vecs.size());
    for (const Vec& v : vecs) d.push_back(mul_vec(ga, v));
    dual[t] = std::move(d);
  }

  std::vector<int> choice(n, -1);
  std::vector<const Vec*> placed(n, nullptr);
  std::vector<const Vec*> placed_dual(n, nullptr);
  int level = 0;
  while (level >= 0) {
    int col = order[level];
    auto& cands = by_norm[gb(col, col)];
    auto& duals = dual[gb(col, col)];
    int next = ++choice[level];
    if (next >= static_cast<int>(cands.size())) {
      choice[level] = -1;
      --level;
      continue;
    }
    const Vec& v = cands[next];
    bool ok = true;
    for (int t = 0; t < level && ok; ++t) {
      Int ip = 0;
      const Vec& d = *placed_dual[t];
      for (int i = 0; i < n; ++i) ip += d[i] * v[i];
      if (ip != gb(order[t], col)) ok = false;
    }
    if (!ok) continue;
    placed[level] = &v;
    placed_dual[level] = &duals[next];
    if (level + 1 == n) {
      IntMat p(n, n);
      for (int t = 0; t < n; ++t)
        for (int i = 0; i < n; ++i) p(i, order[t]) = (*placed[t])[i];
      // columns of p satisfy all pairwise products; determinant check guards rank
      if (abs(det(p)) == 1) return finish(p);
      continue;
    }
    ++level;
  }
  return std::nullopt;
}

std::vector<Lattice> kneser_neighbors(const Lattice& l, const Int& p) {
  if (!is_definite(l) || l.rank() == 0) fail(errc::indefinite_lattice, "neighbors need a definite lattice");
  if (p < 3 || !is_prime(p)) fail(errc::bad_prime, "neighbor prime must be an odd prime");
  if (l.disc() % p == 0) fail(errc::bad_prime, "neighbor prime must not divide the discriminant");

  DefiniteView view = positive_view(l);
  const IntMat& g = view.gram;
  int n = l.rank();

  long pl = static_cast<long>(p.get_si());
  std::set<IntMat> seen_grams;  // reduced Grams; identical presentations collapse

  // enumerate lines of P(F_p^n): representatives with first nonzero coord = 1
  Vec v(n, Int(0));
  for (int lead = 0; lead < n; ++lead) {
    // v_lead = 1, v_i free for i > lead, v_i = 0 for i < lead
    int free = n - lead - 1;
    std::vector<long> digits(free, 0);
    for (;;) {
      std::fill(v.begin(), v.end(), Int(0));
      v[lead] = 1;
      for (int i = 0; i < free; ++i) v[lead + 1 + i] = digits[i];

      // isotropy mod p
      Int norm = 0;
      for (int i = 0; i < n; ++i) {
        if (v[i] == 0) continue;
        for (int j = 0; j < n; ++j) norm += v[i] * g(i, j) * v[j];
      }
      if (norm % p == 0) {
        // adjust the lift so v.v = 0 mod 2p^2
        Vec gv(n);
        for (int i = 0; i < n; ++i) {
          Int s = 0;
          for (int j = 0; j < n; ++j) s += g(i, j) * v[j];
          gv[i] = s;
        }
        int piv = -1;
        for (int i = 0; i < n; ++i)
          if (gv[i] % p != 0) {
            piv = i;
            break;
          }
        if (piv >= 0) {
          // solve s + 2 gv[piv] t = 0 mod p where norm = p s
          Int s = (norm / p) % p;
          Int c = (2 * gv[piv]) % p;
          Int cinv;
          if (mpz_invert(cinv.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t()) == 0)
            fail(errc::internal, "neighbor adjustment not invertible");
          Int t = ((-s * cinv) % p + p) % p;
          v[piv] += p * t;

          // neighbor = {x : x.v = 0 mod p} + Z v/p
          for (int i = 0; i < n; ++i) {
            Int s2 = 0;
            for (int j = 0; j < n; ++j) s2 += g(i, j) * v[j];
            gv[i] = s2;
          }
          IntMat span(n, 2 * n + 1);
          // kernel-mod-p part: e_i - c_i e_piv2 and p e_piv2
          int piv2 = -1;
          for (int i = 0; i < n; ++i)
            if (gv[i] % p != 0) piv2 = i;
          if (piv2 < 0) fail(errc::internal, "neighbor kernel degenerated");
          Int inv2;
          Int gp = gv[piv2] % p;
          mpz_invert(inv2.get_mpz_t(), gp.get_mpz_t(), p.get_mpz_t());
          // columns scaled by p (common denominator): p * kernel vectors and v
          int c0 = 0;
          for (int i = 0; i < n; ++i) {
            if (i == piv2) continue;
            Int ci = ((gv[i] * inv2) % p + p) % p;
            span(i, c0) = p;
            span(piv2, c0) -= p * ci;  // p * (e_i - c_i e_piv2)
            ++c0;
          }
          span(piv2, c0) = p * p;  // p * (p e_piv2)
          ++c0;
          for (int i = 0; i < n; ++i) span(i, c0) = v[i];  // p * (v/p)
          ++c0;
          IntMat trimmed(n, c0);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < c0; ++j) trimmed(i, j) = span(i, j);
          IntMat basis = column_lattice_basis(trimmed);
          if (basis.cols != n) fail(errc::internal, "neighbor basis has wrong rank");
          IntMat big = basis.transposed() * g * basis;
          IntMat gram(n, n);
          Int p2 = p * p;
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
              if (big(i, j) % p2 != 0) fail(errc::internal, "neighbor Gram is not integral");
              gram(i, j) = big(i, j) / p2;
            }
          auto [red, ured] = reduced_gram(gram);
          if (view.flipped)
            for (auto& x : red.a) x = -x;
          seen_grams.insert(red);
        }
      }

      // next digit tuple
      int i = free - 1;
      while (i >= 0) {
        if (++digits[i] < pl) break;
        digits[i] = 0;
        --i;
      }
      if (i < 0) break;
    }
  }
  std::vector<Lattice> out;
  for (const IntMat& red : seen_grams) out.emplace_back(red, "", false);
  return out;
}

namespace {

Int first_good_prime(const Lattice& l, const Int& after) {
  Int p = after;
  for (;;) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    if (p % 2 != 0 && l.disc() % p != 0) return p;
  }
}

}  // namespace

GenusVerdict unique_in_genus(const Lattice& w, const GenusEffort& effort) {
  GenusVerdict verdict;
  if (w.rank() == 0) {
    verdict.status = GenusStatus::UniqueInGenus;
    verdict.reason = "rank 0";
    return verdict;
  }
  if (!is_definite(w)) fail(errc::indefinite_lattice, "unique_in_genus needs a definite lattice");
  if (w.rank() >= 11) {
    // trusted external fact: single-class genera of definite even lattices
    // have rank <= 10, so this genus contains a second class
    verdict.status = GenusStatus::NotUnique;
    verdict.reason = "rank >= 11: beyond the single-class rank bound";
    verdict.classes_found.push_back(w);
    return verdict;
  }

  Int p1 = first_good_prime(w, 2);
  Int p2 = first_good_prime(w, p1);

  // all closure work on the positive definite image; flip back on exit
  DefiniteView view = positive_view(w);
  bool flipped = view.flipped;
  auto [g0, u0] = reduced_gram(view.gram);

  auto to_input_sign = [&](const IntMat& g) {
    IntMat out = g;
    if (flipped)
      for (auto& x : out.a) x = -x;
    return out;
  };

  std::vector<Lattice> classes;               // positive definite representatives
  std::vector<std::set<IntMat>> known_grams;  // reduced Grams already matched per class
  classes.emplace_back(g0, w.label(), false);
  known_grams.emplace_back();
  known_grams[0].insert(g0);

  std::vector<size_t> todo{0};
  while (!todo.empty()) {
    size_t cur = todo.back();
    todo.pop_back();
    for (const Int& p : {p1, p2}) {
      for (const Lattice& nb : kneser_neighbors(classes[cur], p)) {
        const IntMat& red = nb.gram();  // kneser output is already reduced
        bool matched = false;
        for (size_t c = 0; c < classes.size() && !matched; ++c) {
          if (known_grams[c].count(red)) {
            matched = true;
            break;
          }
          if (is_isometric(classes[c], Lattice(red, "", false))) {
            known_grams[c].insert(red);
            matched = true;
          }
        }
        if (!matched) {
          classes.emplace_back(red, "", false);
          known_grams.emplace_back();
          known_grams.back().insert(red);
          todo.push_back(classes.size() - 1);
          if (classes.size() >= 2) {
            verdict.status = GenusStatus::NotUnique;
            verdict.reason = "second class found by " + p.get_str() + "-neighbor step";
            verdict.witness = Lattice(to_input_sign(red), "", false);
            for (const Lattice& c : classes) verdict.classes_found.emplace_back(to_input_sign(c.gram()), "", false);
            return verdict;
          }
          if (static_cast<int>(classes.size()) > effort.class_cap) {
            verdict.status = GenusStatus::Inconclusive;
            verdict.reason = "class cap exhausted";
            return verdict;
          }
        }
      }
    }
  }

  verdict.status = GenusStatus::UniqueInGenus;
  verdict.reason = "neighbor closure at p=" + p1.get_str() + "," + p2.get_str() + " found one class";
  for (const Lattice& c : classes) verdict.classes_found.emplace_back(to_input_sign(c.gram()), "", false);
  return verdict;
}

}  // namespace k3fib
