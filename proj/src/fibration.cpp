#include "k3fib/fibration.hpp"

#include <algorithm>

#include "k3fib/short_vectors.hpp"

namespace k3fib {

const char* status_name(FibStatus s) {
  switch (s) {
    case FibStatus::NoFibration: return "NoFibration";
    case FibStatus::Unique: return "Unique";
    case FibStatus::Multiple: return "Multiple";
    case FibStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* tristate_name(TriState t) {
  switch (t) {
    case TriState::yes: return "yes";
    case TriState::no: return "no";
    case TriState::unknown: return "unknown";
  }
  return "?";
}

TriState tristate_from_string(const std::string& s) {
  if (s == "yes") return TriState::yes;
  if (s == "no") return TriState::no;
  if (s == "unknown" || s.empty()) return TriState::unknown;
  fail(errc::parse_error, "flag must be yes/no/unknown, got '" + s + "'");
}

const char* iso_search_name(IsoSearchStatus s) {
  switch (s) {
    case IsoSearchStatus::Found: return "Found";
    case IsoSearchStatus::NotFoundWithinBound: return "NotFoundWithinBound";
    case IsoSearchStatus::AlwaysByRank: return "AlwaysByRank";
  }
  return "?";
}

bool has_infinite_stabilizer(const Lattice& pic, const Vec& f) {
  if (!is_hyperbolic(pic)) fail(errc::invalid_params, "stabilizer test needs signature (1, r-1)");
  Lattice quot = isotropic_quotient(pic, f);  // validates primitive + isotropic
  auto [sub, dec] = root_sublattice(quot);
  return pic.rank() - 2 - dec.total_rank > 0;
}

bool for_each_boxed_vector(int rank, int bound, long node_budget, const std::function<bool(const Vec&)>& cb) {
  long nodes = 0;
  std::vector<int> support;
  // supports in lexicographic order per size
  std::function<bool(int, int)> rec_support = [&](int start, int need) -> bool {
    if (need == 0) {
      // enumerate nonzero coordinates on the chosen support, lexicographically;
      // first support coordinate positive (sign representatives)
      int s = static_cast<int>(support.size());
      Vec v(rank, Int(0));
      std::vector<int> digits(s);
      std::function<bool(int)> rec_coord = [&](int pos) -> bool {
        if (pos == s) {
          ++nodes;
          for (int i = 0; i < s; ++i) v[support[i]] = digits[i];
          return cb(v);
        }
        int lo = pos == 0 ? 1 : -bound;
        for (int c = lo; c <= bound; ++c) {
          if (c == 0) continue;
          digits[pos] = c;
          if (rec_coord(pos + 1)) return true;
          if (nodes >= node_budget) return false;
        }
        return false;
      };
      return rec_coord(0);
    }
    for (int i = start; i + need <= rank; ++i) {
      support.push_back(i);
      bool stop = rec_support(i + 1, need - 1);
      support.pop_back();
      if (stop) return true;
      if (nodes >= node_budget) return false;
    }
    return false;
  };
  for (int size = 1; size <= rank; ++size) {
    if (rec_support(0, size)) return true;
    if (nodes >= node_budget) return false;
  }
  return true;  // walk finished without a stop
}

IsoSearch find_isotropic_vector(const Lattice& l, const CriteriaOptions& opt) {
  IsoSearch out;
  int r = l.rank();
  if (r == 0) {
    out.exact = true;
    return out;
  }
  Signature sig = signature(l);
  if (sig.n_plus == r || sig.n_minus == r) {
    // definite lattices have no nonzero isotropic vectors
    out.exact = true;
    return out;
  }
  if (r >= 5) {
    // indefinite of rank >= 5 always represents zero (trusted external fact)
    out.status = IsoSearchStatus::AlwaysByRank;
    out.exact = true;
    return out;
  }
  if (r == 2) {
    // binary case is exact: a x^2 + 2b xy + c y^2 represents 0 iff b^2 - ac is a square
    const Int &a = l.gram()(0, 0), &b = l.gram()(0, 1), &c = l.gram()(1, 1);
    Int d = b * b - a * c, s;
    out.exact = true;
    if (a == 0) {
      out.status = IsoSearchStatus::Found;
      out.vector = {1, 0};
    } else if (is_perfect_square(d, &s)) {
      Vec v{s - b, a};
      Int g = vec_gcd(v);
      for (Int& x : v) x /= g;
      if (l.norm_of(v) != 0) fail(errc::internal, "binary isotropic construction failed");
      out.status = IsoSearchStatus::Found;
      out.vector = v;
    }
    return out;
  }
  // bounded box search at rank 3-4
  bool finished = for_each_boxed_vector(r, opt.search_bound, opt.node_budget, [&](const Vec& v) {
    if (l.norm_of(v) != 0) return false;
    Vec p = v;
    Int g = vec_gcd(p);
    for (Int& x : p) x /= g;
    out.status = IsoSearchStatus::Found;
    out.vector = p;
    return true;
  });
  (void)finished;
  return out;
}

std::optional<UWSplit> u_w_split(const Lattice& pic, const CriteriaOptions& opt) {
  if (!is_hyperbolic(pic)) fail(errc::invalid_params, "splitting needs signature (1, r-1)");
  int r = pic.rank();
  Vec found;
  bool finished = for_each_boxed_vector(r, opt.search_bound, opt.node_budget, [&](const Vec& v) {
    if (pic.norm_of(v) != 0) return false;
    Vec p = v;
    Int g = vec_gcd(p);
    for (Int& x : p) x /= g;
    if (divisibility(pic, p) != 1) return false;
    found = p;
    return true;
  });
  if (found.empty()) {
    return std::nullopt;
  }
  (void)finished;

  // f0 with e.f0 = 1 exists because div(e) = 1
  Vec ge = mul_vec(pic.gram(), found);
  IntMat row(1, r);
  for (int i = 0; i < r; ++i) row(0, i) = ge[i];
  auto f0 = solve_integer(row, Vec{Int(1)});
  if (!f0) fail(errc::internal, "divisibility-1 vector with unsolvable pairing");
  // make the section vector isotropic: f = f0 - (f0.f0 / 2) e
  Int n0 = pic.norm_of(*f0);
  Vec f = *f0;
  for (int i = 0; i < r; ++i) f[i] -= (n0 / 2) * found[i];
  if (pic.norm_of(f) != 0 || pic.inner(found, f) != 1) fail(errc::internal, "hyperbolic pair construction failed");

  Sublattice w = orthogonal_complement_all(pic, {found, f});
  if (w.lattice.rank() != r - 2 || !is_negative_definite(w.lattice))
    fail(errc::internal, "orthogonal part of a hyperbolic pair must be negative definite");
  UWSplit split;
  split.w = w.lattice.relabeled(pic.label().empty() ? "" : pic.label() + ".W");
  split.e = found;
  split.f = f;
  split.w_basis = w.embedding;
  split.search_exhausted = finished;
  return split;
}

namespace {

// witness vector v = n u + w for a glue element of order n: primitive,
// isotropic, divisibility exactly n
struct OverlatticeWitness {
  Vec w_in_w;      // primitive w in W coordinates
  Int order;       // n
  Vec v_in_pic;    // n(k e + f) + w
  Int v_div;
};

OverlatticeWitness build_witness(const Lattice& pic, const UWSplit& split, const Lattice& w_lat,
                                 const OverlatticeCert& cert, const DiscriminantGroup& dg) {
  const Vec& glue = cert.glue.front();
  Int n = dg.form.element_order(glue);
  int wr = w_lat.rank();
  // integer lift of n * glue
  Vec w_vec(wr, Int(0));
  for (int i = 0; i < wr; ++i) {
    Rat x = 0;
    for (int t = 0; t < dg.form.generators(); ++t) x += Rat(glue[t]) * dg.lifts(i, t);
    x *= Rat(n);
    x.canonicalize();
    if (x.get_den() != 1) fail(errc::internal, "glue lift is not integral after scaling by its order");
    w_vec[i] = x.get_num();
  }
  Int content = vec_gcd(w_vec);
  for (Int& x : w_vec) x /= content;  // primitive part generates the same extension

  Int norm = w_lat.norm_of(w_vec);
  if (norm % (2 * n * n) != 0) fail(errc::internal, "glue vector norm is not -2k n^2");
  Int k = -norm / (2 * n * n);

  int r = pic.rank();
  Vec v(r, Int(0));
  // u = k e + f has norm 2k; v = n u + w
  for (int i = 0; i < r; ++i) v[i] = n * (k * split.e[i] + split.f[i]);
  for (int j = 0; j < wr; ++j)
    for (int i = 0; i < r; ++i) v[i] += split.w_basis(i, j) * w_vec[j];

  if (pic.norm_of(v) != 0) fail(errc::internal, "witness vector is not isotropic");
  if (!is_primitive(v)) fail(errc::internal, "witness vector is not primitive");
  Int dv = divisibility(pic, v);
  if (dv % n != 0 || dv < 2) fail(errc::internal, "witness vector has wrong divisibility");
  return OverlatticeWitness{w_vec, n, v, dv};
}

}  // namespace

Verdict decide_split_case(const Lattice& pic, const UWSplit& split, TriState infinite_aut,
                          TriState zero_entropy, const CriteriaOptions& opt) {
  Verdict verdict;
  const Lattice& w = split.w;

  if (w.rank() >= 11) {
    CertStep step;
    step.criterion = criteria::rank11;
    step.inputs = {{"w_gram", to_json(w.gram())}};
    step.outcome = {{"rank", w.rank()}, {"unique_in_genus", false}};
    verdict.certificate.push_back(std::move(step));
    verdict.status = FibStatus::Multiple;
    return verdict;
  }

  CertStep step;
  step.criterion = criteria::split_case;
  step.inputs = {{"pic_gram", to_json(pic.gram())},
                 {"w_gram", to_json(w.gram())},
                 {"e", to_json(split.e)},
                 {"f", to_json(split.f)},
                 {"w_basis", to_json(split.w_basis)},
                 {"infinite_aut", tristate_name(infinite_aut)},
                 {"zero_entropy", tristate_name(zero_entropy)},
                 {"class_cap", opt.genus_effort.class_cap},
                 {"group_bound", to_i64(opt.group_bound)}};

  GenusVerdict genus = unique_in_genus(w, opt.genus_effort);
  json out;
  out["genus"] = genus.status == GenusStatus::UniqueInGenus ? "UniqueInGenus"
                 : genus.status == GenusStatus::NotUnique   ? "NotUnique"
                                                            : "Inconclusive";
  out["genus_reason"] = genus.reason;

  if (genus.status == GenusStatus::NotUnique) {
    if (genus.witness) out["genus_witness"] = to_json(genus.witness->gram());
    out["status"] = status_name(FibStatus::Multiple);
    step.outcome = std::move(out);
    verdict.certificate.push_back(std::move(step));
    verdict.status = FibStatus::Multiple;
    return verdict;
  }

  std::vector<OverlatticeCert> overs = even_overlattices(w, opt.group_bound);
  out["overlattices"] = static_cast<int>(overs.size());
  if (!overs.empty()) {
    DiscriminantGroup dg = discriminant_group(w);
    OverlatticeWitness wit = build_witness(pic, split, w, overs.front(), dg);
    out["overlattice_witness"] = {{"glue", to_json(overs.front().glue.front())},
                                  {"order", to_i64(wit.order)},
                                  {"w_vector", to_json(wit.w_in_w)},
                                  {"isotropic_v", to_json(wit.v_in_pic)},
                                  {"v_divisibility", to_i64(wit.v_div)}};
    out["status"] = status_name(FibStatus::Multiple);
    step.outcome = std::move(out);
    verdict.certificate.push_back(std::move(step));
    verdict.status = FibStatus::Multiple;
    return verdict;
  }

  if (genus.status == GenusStatus::Inconclusive) {
    out["status"] = status_name(FibStatus::Inconclusive);
    step.outcome = std::move(out);
    verdict.certificate.push_back(std::move(step));
    verdict.status = FibStatus::Inconclusive;
    return verdict;
  }

  // both conditions hold; the unique conclusion needs the hypotheses
  if (infinite_aut == TriState::yes && zero_entropy == TriState::yes) {
    out["status"] = status_name(FibStatus::Unique);
    verdict.status = FibStatus::Unique;
  } else {
    out["status"] = status_name(FibStatus::Inconclusive);
    out["missing_hypotheses"] = true;
    verdict.status = FibStatus::Inconclusive;
  }
  step.outcome = std::move(out);
  verdict.certificate.push_back(std::move(step));
  return verdict;
}

namespace {

struct AdeSumGen {
  int rank;
  std::vector<std::vector<AdeComponent>> sums;

  void run() {
    std::vector<AdeComponent> cur;
    rec(rank, {'A', 1}, cur);
  }

  // components in non-decreasing order to enumerate multisets once
  void rec(int remaining, AdeComponent min_comp, std::vector<AdeComponent>& cur) {
    if (remaining == 0) {
      sums.push_back(cur);
      return;
    }
    for (const AdeComponent& c : candidates(remaining)) {
      if (c < min_comp) continue;
      cur.push_back(c);
      rec(remaining - c.index, c, cur);
      cur.pop_back();
    }
  }

  static std::vector<AdeComponent> candidates(int remaining) {
    std::vector<AdeComponent> out;
    for (int k = 1; k <= remaining; ++k) out.push_back({'A', k});
    for (int k = 4; k <= remaining; ++k) out.push_back({'D', k});
    for (int k = 6; k <= remaining && k <= 8; ++k) out.push_back({'E', k});
    return out;
  }
};

Int ade_disc(const std::vector<AdeComponent>& sum) {
  Int d = 1;
  for (const AdeComponent& c : sum) {
    if (c.family == 'A')
      d *= c.index + 1;
    else if (c.family == 'D')
      d *= 4;
    else
      d *= 9 - c.index;  // E6 -> 3, E7 -> 2, E8 -> 1
  }
  return d;
}

std::vector<std::pair<Lattice, Int>> root_overlattices_impl(int rank, const Int& disc_divisor,
                                                            const Int& sqf_filter, const Int& group_bound) {
  if (rank < 0) fail(errc::invalid_params, "rank must be >= 0");
  std::vector<std::pair<Lattice, Int>> found;
  if (rank == 0) return found;

  AdeSumGen gen{rank, {}};
  gen.run();

  auto consider = [&](Lattice l) {
    Int d = l.disc();
    if (disc_divisor > 0 && disc_divisor % d != 0) return;
    for (const auto& [other, od] : found) {
      if (od != d) continue;
      if (is_isometric(other, l)) return;
    }
    found.emplace_back(std::move(l), d);
  };

  for (const auto& sum : gen.sums) {
    Int droot = ade_disc(sum);
    if (sqf_filter > 0 && squarefree_part(droot) != sqf_filter) continue;
    Lattice root = ade_lattice(sum);
    consider(root);
    for (OverlatticeCert& cert : even_overlattices(root, group_bound)) consider(std::move(cert.result));
  }

  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first.gram() < b.first.gram();
  });
  return found;
}

}  // namespace

std::vector<std::pair<Lattice, Int>> enumerate_root_overlattices(int rank, const Int& disc_divisor,
                                                                 const Int& group_bound) {
  return root_overlattices_impl(rank, disc_divisor, Int(0), group_bound);
}

bool root_overlattice_obstruction(const Lattice& pic, json* detail, const CriteriaOptions& opt) {
  if (!is_hyperbolic(pic)) fail(errc::invalid_params, "obstruction test needs signature (1, r-1)");
  if (pic.rank() < 3) fail(errc::invalid_params, "obstruction test needs rank >= 3");

  Int disc = pic.disc();
  // only lattices sharing the squarefree part of disc can give a square ratio,
  // and overlattices do not change the squarefree part of an ADE sum
  std::vector<std::pair<Lattice, Int>> candidates =
      root_overlattices_impl(pic.rank() - 2, disc, squarefree_part(disc), opt.group_bound);

  FiniteQuadraticForm dform = discriminant_form(pic);
  bool obstruction = false;
  json list = json::array();
  for (const auto& [n_lat, d] : candidates) {
    json item;
    item["label"] = n_lat.label();
    item["gram"] = to_json(n_lat.gram());
    item["disc"] = to_i64(d);
    Int ratio = disc / d;
    item["ratio"] = to_i64(ratio);
    Int root;
    bool square = is_perfect_square(ratio, &root);
    item["square"] = square;
    if (square) {
      item["n"] = to_i64(root);
      bool iso = isotropic_element_of_order(dform, root, opt.group_bound).has_value();
      item["isotropic"] = iso;
      if (iso) obstruction = true;
    }
    list.push_back(std::move(item));
  }
  if (detail) {
    (*detail)["candidates"] = std::move(list);
    (*detail)["obstruction"] = obstruction;
  }
  return obstruction;
}

Verdict classify_rank2(const Int& n, const Int& k) {
  if (n < 1 || k < 1) fail(errc::invalid_params, "rank-2 family needs n >= 1, k >= 1");
  IntMat gram{{Int(0), n}, {n, Int(-2) * k}};
  Lattice pic(gram, "[[0,n],[n,-2k]]");

  // the two primitive isotropic rays
  Vec r1{1, 0};
  Int g = gcd(k, n);
  Vec r2{k / g, n / g};

  // all (-2)-vectors: a single sign pair when n | k-1, none otherwise
  std::optional<Vec> root;
  if ((k - 1) % n == 0) {
    root = Vec{(k - 1) / n, 1};
    if (pic.norm_of(*root) != -2) fail(errc::internal, "rank-2 root construction failed");
  }

  // orbit of the rays under the reflection group generated by the roots
  int orbits = 2;
  if (root) {
    // s(x) = x + (x.root) root
    Int c = pic.inner(r1, *root);
    Vec image{r1[0] + c * (*root)[0], r1[1] + c * (*root)[1]};
    Int cont = vec_gcd(image);
    for (Int& x : image) x /= cont;
    Vec neg{-image[0], -image[1]};
    if (image == r2 || neg == r2) orbits = 1;
  }

  Verdict verdict;
  verdict.status = orbits == 1 ? FibStatus::Unique : FibStatus::Multiple;
  CertStep step;
  step.criterion = criteria::rank2;
  step.inputs = {{"n", to_i64(n)}, {"k", to_i64(k)}};
  step.outcome = {{"rays", json::array({to_json(r1), to_json(r2)})},
                  {"root", root ? to_json(*root) : json(nullptr)},
                  {"orbits", orbits},
                  {"status", status_name(verdict.status)}};
  verdict.certificate.push_back(std::move(step));
  return verdict;
}

Lattice reduce_by_divisibility(const Lattice& pic, const Vec& f) {
  if (is_zero_vec(f)) fail(errc::zero_vector, "reduction needs a nonzero fiber class");
  if (!is_primitive(f)) fail(errc::not_primitive, "fiber class must be primitive");
  if (pic.norm_of(f) != 0) fail(errc::not_isotropic, "fiber class must be isotropic");
  Int m = divisibility(pic, f);
  if (m < 2) fail(errc::invalid_params, "fiber class must have divisibility >= 2");
  return divide_vector(pic, f, m);
}

ShaClass multiply_class(const ShaClass& c, const Int& n) {
  if (n < 1) fail(errc::invalid_params, "multiplication index must be >= 1");
  ShaClass out = c;
  out.order = c.order / gcd(c.order, n);
  return out;
}

ShaClass p_divide_class(const ShaClass& c, const Int& p) {
  if (p < 2 || !is_prime(p)) fail(errc::invalid_params, "division index must be prime");
  ShaClass out = c;
  out.order = c.order * p;
  return out;
}

std::pair<Sublattice, int> over_exceptional_from_fibrations(const Lattice& pic, const std::vector<Vec>& fibs) {
  if (fibs.empty()) fail(errc::invalid_params, "need at least one fibration class");
  for (const Vec& f : fibs) {
    if (is_zero_vec(f)) fail(errc::zero_vector, "fibration class is zero");
    if (!is_primitive(f)) fail(errc::not_primitive, "fibration class must be primitive");
    if (pic.norm_of(f) != 0) fail(errc::not_isotropic, "fibration class must be isotropic");
  }
  Sublattice comp = orthogonal_complement_all(pic, fibs);
  int root_rank = 0;
  if (comp.lattice.rank() > 0) {
    // quotient by the radical before counting roots
    IntMat rad = kernel_basis(comp.lattice.gram());
    if (rad.cols == 0) {
      auto [sub, dec] = root_sublattice(comp.lattice);
      root_rank = dec.total_rank;
    } else if (rad.cols < comp.lattice.rank()) {
      // change to a basis whose first rad.cols columns span the radical
      SnfResult s = smith_normal_form(rad);
      IntMat basis = inverse_unimodular(s.left);
      IntMat full = basis.transposed() * comp.lattice.gram() * basis;
      int q = comp.lattice.rank() - rad.cols;
      IntMat quot(q, q);
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) quot(i, j) = full(rad.cols + i, rad.cols + j);
      auto [sub, dec] = root_sublattice(Lattice(quot));
      root_rank = dec.total_rank;
    }
  }
  // with two genuinely distinct fibrations the root part is bounded by 17
  bool two_distinct = false;
  for (size_t i = 0; i < fibs.size() && !two_distinct; ++i)
    for (size_t j = i + 1; j < fibs.size() && !two_distinct; ++j)
      if (pic.inner(fibs[i], fibs[j]) > 0) two_distinct = true;
  if (two_distinct && root_rank > 17) fail(errc::internal, "over-exceptional root rank exceeded 17");
  return {std::move(comp), root_rank};
}

}  // namespace k3fib
