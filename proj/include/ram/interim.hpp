#ifndef RAM_INTERIM_HPP_
#define RAM_INTERIM_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "ram/axioms.hpp"
#include "ram/core.hpp"
#include "ram/mechanisms.hpp"

namespace ram {

// Common i.i.d. prior over the n! preferences, indexed by lexicographic position.
class Prior {
 public:
  Prior(int n, std::vector<Rational> probabilities);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] std::span<const Rational> probabilities() const { return probs_; }
  [[nodiscard]] const Rational& operator[](std::size_t index) const { return probs_.at(index); }
  [[nodiscard]] const Rational& probability(const Preference& p) const {
    return probs_.at(p.lex_index());
  }

  friend bool operator==(const Prior&, const Prior&) = default;

 private:
  int n_;
  std::vector<Rational> probs_;
};

Prior uniform_prior(int n, const EnumerationLimits& limits = {});

struct InterimShareVector {
  AgentIndex agent;
  Preference report;
  std::vector<Rational> shares;  // by object; sums to exactly 1
};

// q_i(report) = sum over P_{-i} of prod_{j != i} prior(P_j) * Q_i(report, P_{-i}).
InterimShareVector interim_share_vector(const Mechanism& m, AgentIndex agent,
                                        const Preference& report, const Prior& prior,
                                        const EnumerationLimits& limits = {});

// Interim share vectors of every agent under every report.
class InterimTable {
 public:
  InterimTable(std::vector<Preference> reports, std::vector<std::vector<std::vector<Rational>>> shares);

  [[nodiscard]] int n() const { return static_cast<int>(shares_.size()); }
  [[nodiscard]] const std::vector<Preference>& reports() const { return reports_; }
  // Shares of `agent` when reporting reports()[report].
  [[nodiscard]] const std::vector<Rational>& shares(AgentIndex agent, std::size_t report) const {
    return shares_.at(agent).at(report);
  }

 private:
  std::vector<Preference> reports_;
  std::vector<std::vector<std::vector<Rational>>> shares_;
};

InterimTable compute_interim_table(const Mechanism& m, const Prior& prior,
                                   const SweepOptions& options = {});

// Interim checks always collect every violation (the domain is n * n! reports).
CheckOutcome check_obic(const InterimTable& table);
CheckOutcome check_interim_elementary_monotonicity(const InterimTable& table);
CheckOutcome check_interim_upper_invariance(const InterimTable& table);
CheckOutcome check_interim_lower_invariance(const InterimTable& table);

CheckOutcome check_obic(const Mechanism& m, const Prior& prior, const SweepOptions& options = {});
CheckOutcome check_interim_elementary_monotonicity(const Mechanism& m, const Prior& prior,
                                                   const SweepOptions& options = {});
CheckOutcome check_interim_upper_invariance(const Mechanism& m, const Prior& prior,
                                            const SweepOptions& options = {});
CheckOutcome check_interim_lower_invariance(const Mechanism& m, const Prior& prior,
                                            const SweepOptions& options = {});

// Recomputes an interim report with interim_share_vector. True iff the
// recorded values reproduce and still violate the axiom.
bool replay_interim(const ViolationReport& report, const Mechanism& m, const Prior& prior,
                    const EnumerationLimits& limits = {});

struct RankVectorReport {
  AgentIndex agent;
  std::vector<Preference> reports;
  std::vector<std::vector<Rational>> shares;        // by object, per report
  std::vector<std::vector<Rational>> rank_vectors;  // by rank, per report
  // The share at rank k does not depend on the report.
  bool rank_invariant = false;
  // Every report's rank vector is non-increasing in rank.
  bool rank_monotone = false;
};

RankVectorReport rank_vector_report(const Mechanism& m, const Prior& prior, AgentIndex agent,
                                    const SweepOptions& options = {});
RankVectorReport rank_vector_report(const InterimTable& table, AgentIndex agent);

struct PriorSamplerConfig {
  std::int64_t grid = 1'000'000;  // sampled probabilities are multiples of 1/grid
  int max_attempts = 1000;
  // When non-empty, only these preferences (lex indices) receive random upward
  // offsets; every other preference absorbs the compensation evenly.
  std::vector<std::size_t> targeted;
};

struct PriorBallSample {
  Prior center;
  Rational epsilon;
  std::uint64_t seed;
  Prior sample;
  int attempts;
};

// Thrown when no grid point inside the ball was found within the retry budget.
class SamplingExhausted : public InputError {
 public:
  using InputError::InputError;
};

// Deterministic across runs and platforms for a fixed (center, epsilon, seed, config).
PriorBallSample sample_prior_in_ball(const Prior& center, const Rational& epsilon,
                                     std::uint64_t seed, const PriorSamplerConfig& config = {});

// Seed used for sample number `index` of a search seeded with `seed`.
std::uint64_t derive_sample_seed(std::uint64_t seed, std::uint64_t index);

struct LrobicOptions {
  bool targeted = false;
  PriorSamplerConfig sampler;
  SweepOptions sweep;
};

struct LrobicViolation {
  std::uint64_t sample_index;
  PriorBallSample prior;
  ViolationReport witness;  // an OBIC violation at prior.sample
};

// Searches sampled priors in the ball for one at which `m` is not OBIC.
// An empty result certifies nothing.
std::optional<LrobicViolation> lrobic_search(const Mechanism& m, const Prior& center,
                                             const Rational& epsilon, int samples,
                                             std::uint64_t seed, const LrobicOptions& options = {});

// Preferences the targeted sampler perturbs for `m`: the opponents' reports at
// the earliest ex-post upper/lower invariance violation. Empty when there is none.
std::vector<std::size_t> invariance_target(const Mechanism& m, const SweepOptions& options = {});

struct ObicDecomposition {
  CheckOutcome obic;
  CheckOutcome elementary_monotonicity;
  CheckOutcome upper_invariance;
  CheckOutcome lower_invariance;
};

// Runs all four interim checks. Throws InternalError if OBIC disagrees with the
// conjunction of the three interim axioms, or if some interim-axiom violation at
// a swap pair has no OBIC violation at that pair in either orientation.
ObicDecomposition obic_decomposition_report(const Mechanism& m, const Prior& prior,
                                            const SweepOptions& options = {});
ObicDecomposition obic_decomposition_report(const InterimTable& table);

}  // namespace ram

#endif  // RAM_INTERIM_HPP_
