#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "k3fib/genus.hpp"
#include "k3fib/json_util.hpp"

namespace k3fib {

enum class FibStatus { NoFibration, Unique, Multiple, Inconclusive };
const char* status_name(FibStatus s);

// One replayable criterion application: re-running `criterion` on `inputs`
// must reproduce `outcome` bit for bit.
struct CertStep {
  std::string criterion;
  json inputs;
  json outcome;
};

struct Verdict {
  FibStatus status = FibStatus::Inconclusive;
  std::vector<CertStep> certificate;
};

enum class TriState { yes, no, unknown };
const char* tristate_name(TriState t);
TriState tristate_from_string(const std::string& s);

struct CriteriaOptions {
  int search_bound = 10;           // coordinate box for isotropic searches
  long node_budget = 4000000;      // candidate vectors visited before giving up
  GenusEffort genus_effort;
  Int group_bound = 10000;
};

// criterion ids used in certificates
namespace criteria {
inline constexpr const char* stabilizer = "prop21";
inline constexpr const char* reduction = "prop41";
inline constexpr const char* split_case = "prop43";
inline constexpr const char* obstruction = "prop44";
inline constexpr const char* rank2 = "rank2";
inline constexpr const char* isotropy = "meyer";
inline constexpr const char* rank11 = "rank11-genus";
}  // namespace criteria

// Stabilizer test for a fibration class: infinite iff rho - 2 exceeds the
// root rank of F^perp/<F>.
bool has_infinite_stabilizer(const Lattice& pic, const Vec& f);

// Decomposition Pic = U + W from a divisibility-1 primitive isotropic vector
// found within the search bound; absence is absence-within-bound, not a proof.
struct UWSplit {
  Lattice w;
  Vec e, f;        // hyperbolic pair: e.e = f.f = 0, e.f = 1
  IntMat w_basis;  // columns embed W into pic coordinates
  bool search_exhausted = false;
};
std::optional<UWSplit> u_w_split(const Lattice& pic, const CriteriaOptions& opt = {});

// Decision for Pic = U + W: unique iff W is alone in its genus and has no
// nontrivial even overlattice; failure of either is an unconditional witness
// for a second fibration. The unique conclusion additionally needs the
// infinite-automorphism and zero-entropy hypotheses, which are input flags.
Verdict decide_split_case(const Lattice& pic, const UWSplit& split, TriState infinite_aut,
                          TriState zero_entropy, const CriteriaOptions& opt = {});

// Existence of a full-rank root-overlattice quotient with square discriminant
// ratio realized by an isotropic discriminant element; false means no second
// fibration can exist (under zero entropy + infinite automorphisms).
bool root_overlattice_obstruction(const Lattice& pic, json* detail, const CriteriaOptions& opt = {});

// All ADE sums of the given rank plus their even overlattices, deduplicated by
// isometry; disc_divisor > 0 keeps only lattices whose disc divides it.
std::vector<std::pair<Lattice, Int>> enumerate_root_overlattices(int rank, const Int& disc_divisor,
                                                                 const Int& group_bound = 10000);

// Ray/reflection-orbit classification of [[0,n],[n,-2k]].
Verdict classify_rank2(const Int& n, const Int& k);

// The overlattice obtained by dividing a primitive isotropic F of divisibility
// m >= 2 by m; a second fibration there forces one here.
Lattice reduce_by_divisibility(const Lattice& pic, const Vec& f);

enum class IsoSearchStatus { Found, NotFoundWithinBound, AlwaysByRank };
const char* iso_search_name(IsoSearchStatus s);
struct IsoSearch {
  IsoSearchStatus status = IsoSearchStatus::NotFoundWithinBound;
  Vec vector;   // when found
  bool exact = false;  // result is a complete answer, not bounded-search silence
};
IsoSearch find_isotropic_vector(const Lattice& l, const CriteriaOptions& opt = {});

// Canonical-order walk over nonzero vectors in the coordinate box, staged by
// support size. Callback returns true to stop. Returns false when the node
// budget ran out before the walk finished.
bool for_each_boxed_vector(int rank, int bound, long node_budget, const std::function<bool(const Vec&)>& cb);

// Tate-Shafarevich twist bookkeeping: a torsor class of given order over a
// Jacobian fibration with known Picard discriminant.
struct ShaClass {
  Int order = 1;
  Int jacobian_disc = 0;
  std::string fibration_base;
  Int picard_disc() const { return order * order * jacobian_disc; }
};
ShaClass multiply_class(const ShaClass& c, const Int& n);
ShaClass p_divide_class(const ShaClass& c, const Int& p);

// Saturated sublattice orthogonal to all given fibration classes and the rank
// of its root part (computed modulo the radical when degenerate).
std::pair<Sublattice, int> over_exceptional_from_fibrations(const Lattice& pic, const std::vector<Vec>& fibs);

}  // namespace k3fib
