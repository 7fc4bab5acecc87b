#ifndef RAM_AXIOMS_HPP_
#define RAM_AXIOMS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ram/core.hpp"
#include "ram/decomp.hpp"
#include "ram/mechanisms.hpp"

namespace ram {

enum class Axiom {
  kStrategyProofness,
  kWeakStrategyProofness,
  kElementaryMonotonicity,
  kNeutrality,
  kUpperInvariance,
  kLowerInvariance,
  kEqualTreatment,
  kOrdinalEfficiency,
  kExPostEfficiency,
  // Interim (prior-dependent) axioms.
  kObic,
  kInterimElementaryMonotonicity,
  kInterimUpperInvariance,
  kInterimLowerInvariance,
};

// Short names used on the command line and in reports: sp, weak-sp, em, neutral,
// ui, li, ete, oe, ex-post, obic, interim-em, interim-ui, interim-li.
std::string_view axiom_name(Axiom axiom);
Axiom parse_axiom(std::string_view name);
bool is_interim(Axiom axiom);

// Relation between lhs and rhs that the axiom requires and the witness breaks.
enum class Relation { kAtLeast, kAtMost, kEqual, kNone };

// A self-certifying witness: re-evaluating the mechanism at the recorded
// inputs reproduces lhs and rhs exactly.
struct ViolationReport {
  Axiom axiom;
  AgentIndex agent = -1;
  std::optional<Profile> profile;           // ex-post: the truthful profile
  std::optional<Preference> truthful;       // the agent's true preference
  std::optional<Preference> deviation;      // misreport / swapped preference
  std::optional<SwapInfo> swap;
  std::optional<ObjectPermutation> permutation;
  std::optional<AgentIndex> other_agent;    // equal treatment of equals
  std::optional<DeterministicAssignment> component;  // ex-post efficiency
  std::vector<int> witness;  // objects (an object cycle for oe, agents for ex-post)
  int prefix_length = 0;     // stochastic-dominance failures
  Relation relation = Relation::kNone;
  Rational lhs;
  Rational rhs;
  // Enumeration position; reports are ordered by it.
  std::vector<std::uint64_t> order_key;
};

struct CheckStats {
  // Profile evaluations inspected. Swap sweeps look at every profile once per
  // agent, so an exhaustive one reports n * (n!)^n.
  std::uint64_t profiles_checked = 0;
  std::uint64_t comparisons = 0;
};

struct CheckOutcome {
  Axiom axiom;
  std::vector<ViolationReport> violations;  // sorted by enumeration order
  CheckStats stats;

  [[nodiscard]] bool satisfied() const { return violations.empty(); }
};

enum class SweepMode {
  kAuto,            // exhaustive for n <= 3, first violation otherwise
  kFirstViolation,  // the violation earliest in enumeration order
  kExhaustive,
};

struct SweepOptions {
  SweepMode mode = SweepMode::kAuto;
  int threads = 0;  // 0: hardware concurrency
  EnumerationLimits limits;
};

[[nodiscard]] bool collect_all(const SweepOptions& options, int n);

CheckOutcome check_strategy_proofness(const Mechanism& m, const SweepOptions& options = {});
CheckOutcome check_weak_strategy_proofness(const Mechanism& m, const SweepOptions& options = {});
CheckOutcome check_elementary_monotonicity(const Mechanism& m, const SweepOptions& options = {});
CheckOutcome check_upper_invariance(const Mechanism& m, const SweepOptions& options = {});
CheckOutcome check_lower_invariance(const Mechanism& m, const SweepOptions& options = {});
CheckOutcome check_neutrality(const Mechanism& m, const SweepOptions& options = {});
CheckOutcome check_equal_treatment_of_equals(const Mechanism& m, const SweepOptions& options = {});
// Ordinal / ex-post efficiency of the mechanism's output at every profile.
CheckOutcome check_ordinal_efficiency(const Mechanism& m, const SweepOptions& options = {});
CheckOutcome check_ex_post_efficiency(const Mechanism& m, const SweepOptions& options = {});

// Runs several swap-based ex-post axioms in one pass over the domain, sharing
// mechanism evaluations. Outcomes come back in the order requested.
std::vector<CheckOutcome> check_swap_axioms(const Mechanism& m, const std::vector<Axiom>& axioms,
                                            const SweepOptions& options = {});

// Dispatches on an ex-post axiom.
CheckOutcome check_axiom(Axiom axiom, const Mechanism& m, const SweepOptions& options = {});

struct OrdinalEfficiencyResult {
  bool efficient = true;
  std::vector<ObjectIndex> cycle;  // a tau-cycle a1 -> a2 -> ... -> a1 when inefficient
};

// a tau b iff some agent ranks a above b yet holds a positive share of b.
std::vector<std::vector<bool>> tau_relation(const Assignment& l, const Profile& profile);
// Production check: ordinally efficient iff the tau relation is acyclic.
OrdinalEfficiencyResult check_ordinal_efficiency(const Assignment& l, const Profile& profile);

struct LpDominanceResult {
  Rational optimum;                    // total cumulative slack of the best dominating M
  std::optional<Assignment> dominating;  // present iff optimum > 0
};

// Independent oracle: exact LP maximizing the total slack of the FOSD prefix
// constraints over all assignments dominating `l` agent by agent.
LpDominanceResult lp_dominance(const Assignment& l, const Profile& profile, int max_n = 6);
std::optional<Assignment> lp_dominance_oracle(const Assignment& l, const Profile& profile);

// Every Birkhoff-von Neumann component of `l` is Pareto efficient.
bool check_ex_post_efficiency(const Assignment& l, const Profile& profile);

// Recomputes an ex-post report from the mechanism. True iff the recorded
// values reproduce exactly and still violate the axiom.
bool replay(const ViolationReport& report, const Mechanism& m);

}  // namespace ram

#endif  // RAM_AXIOMS_HPP_
