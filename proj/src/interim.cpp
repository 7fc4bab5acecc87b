#include "ram/interim.hpp"

#include <algorithm>
#include <random>

#include "ram/parallel.hpp"

namespace ram {

// ---------------------------------------------------------------------------
// Priors

Prior::Prior(int n, std::vector<Rational> probabilities) : n_(n), probs_(std::move(probabilities)) {
  if (n_ < 1) throw InputError("n must be at least 1");
  if (probs_.size() != factorial(n_)) {
    throw InputError("prior needs " + std::to_string(factorial(n_)) + " probabilities, got " +
                     std::to_string(probs_.size()));
  }
  for (std::size_t k = 0; k < probs_.size(); ++k) {
    if (probs_[k] < 0) {
      throw InputError("negative probability " + probs_[k].str() + " for preference #" +
                       std::to_string(k + 1));
    }
  }
  const Rational total = sum(probs_);
  if (total != 1) {
    throw InputError("prior probabilities sum to " + total.str() + " (residual " +
                     (Rational(1) - total).str() + ")");
  }
}

Prior uniform_prior(int n, const EnumerationLimits& limits) {
  if (n > limits.max_preference_n) {
    throw ResourceError("preference enumeration cap exceeded: n = " + std::to_string(n) +
                        " > max_preference_n = " + std::to_string(limits.max_preference_n));
  }
  const auto count = factorial(n);
  return Prior(n, std::vector<Rational>(count, Rational(1, static_cast<long>(count))));
}

namespace {

Rational opponent_weight(const Prior& prior, std::span<const std::uint32_t> indices) {
  Rational w(1);
  for (auto k : indices) {
    const Rational& p = prior[k];
    if (p.is_zero()) return Rational(0);
    w *= p;
  }
  return w;
}

void require_matching(const Mechanism& m, const Prior& prior) {
  if (m.n() != prior.n()) throw InputError("prior and mechanism disagree on n");
}

}  // namespace

InterimShareVector interim_share_vector(const Mechanism& m, AgentIndex agent,
                                        const Preference& report, const Prior& prior,
                                        const EnumerationLimits& limits) {
  require_matching(m, prior);
  const int n = m.n();
  const OpponentProfiles opponents(n, agent, limits);
  std::vector<Rational> shares(n);
  Profile profile(std::vector<Preference>(n, report));
  for (std::uint64_t k = 0; k < opponents.count(); ++k) {
    const auto idx = opponents.indices(k);
    const Rational w = opponent_weight(prior, idx);
    if (w.is_zero()) continue;
    opponents.fill(k, profile);
    const Assignment q = m.evaluate(profile);
    for (ObjectIndex a = 0; a < n; ++a) shares[a] += w * q(agent, a);
  }
  return InterimShareVector{agent, report, std::move(shares)};
}

// ---------------------------------------------------------------------------
// Interim table

InterimTable::InterimTable(std::vector<Preference> reports,
                           std::vector<std::vector<std::vector<Rational>>> shares)
    : reports_(std::move(reports)), shares_(std::move(shares)) {
  for (const auto& agent : shares_) {
    if (agent.size() != reports_.size()) throw InputError("interim table is ragged");
    for (const auto& v : agent) {
      if (sum(v) != 1) throw InternalError("interim share vector does not sum to 1");
    }
  }
}

InterimTable compute_interim_table(const Mechanism& m, const Prior& prior,
                                   const SweepOptions& options) {
  require_matching(m, prior);
  const int n = m.n();
  std::vector<OpponentProfiles> opponents;
  for (AgentIndex i = 0; i < n; ++i) opponents.emplace_back(n, i, options.limits);
  const auto& prefs = opponents.front().preferences();
  const std::uint64_t per_agent = opponents.front().count();
  const int threads = resolve_threads(options.threads);

  using Accumulator = std::vector<std::vector<std::vector<Rational>>>;
  std::vector<Accumulator> partial(
      threads, Accumulator(n, std::vector<std::vector<Rational>>(prefs.size(),
                                                                 std::vector<Rational>(n))));

  parallel_chunks(per_agent * n, threads, 16, [&](std::uint64_t begin, std::uint64_t end, int w) {
    Profile profile(std::vector<Preference>(n, prefs.front()));
    for (std::uint64_t cell = begin; cell < end; ++cell) {
      const auto agent = static_cast<AgentIndex>(cell / per_agent);
      const std::uint64_t k = cell % per_agent;
      const Rational weight = opponent_weight(prior, opponents[agent].indices(k));
      if (weight.is_zero()) continue;
      opponents[agent].fill(k, profile);
      for (std::size_t r = 0; r < prefs.size(); ++r) {
        profile.set(agent, prefs[r]);
        const Assignment q = m.evaluate(profile);
        auto& acc = partial[w][agent][r];
        for (ObjectIndex a = 0; a < n; ++a) acc[a] += weight * q(agent, a);
      }
    }
  });

  // Exact addition, so merging per-worker sums is order independent.
  Accumulator total = std::move(partial.front());
  for (std::size_t t = 1; t < partial.size(); ++t) {
    for (AgentIndex i = 0; i < n; ++i) {
      for (std::size_t r = 0; r < prefs.size(); ++r) {
        for (ObjectIndex a = 0; a < n; ++a) total[i][r][a] += partial[t][i][r][a];
      }
    }
  }
  return InterimTable(prefs, std::move(total));
}

// ---------------------------------------------------------------------------
// Interim checks

namespace {

ViolationReport interim_report(Axiom axiom, const InterimTable& t, AgentIndex i, std::size_t r,
                               std::size_t d) {
  ViolationReport v;
  v.axiom = axiom;
  v.agent = i;
  v.truthful = t.reports()[r];
  v.deviation = t.reports()[d];
  return v;
}

std::size_t report_index(const Preference& p) {
  return static_cast<std::size_t>(p.lex_index());
}

CheckOutcome interim_swap_check(Axiom axiom, const InterimTable& t) {
  CheckOutcome out{axiom, {}, {}};
  const int n = t.n();
  for (AgentIndex i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < t.reports().size(); ++r) {
      const Preference& truth = t.reports()[r];
      ++out.stats.profiles_checked;
      for (int k = 0; k + 1 < n; ++k) {
        const std::size_t d = report_index(truth.swapped_at(k));
        const auto& q = t.shares(i, r);
        const auto& qd = t.shares(i, d);
        const SwapInfo swap{k, truth.ranking()[k], truth.ranking()[k + 1]};
        auto emit = [&](ObjectIndex x, Relation rel, std::uint64_t slot) {
          ViolationReport v = interim_report(axiom, t, i, r, d);
          v.swap = swap;
          v.witness = {x};
          v.relation = rel;
          v.lhs = qd[x];
          v.rhs = q[x];
          v.order_key = {static_cast<std::uint64_t>(i), r, static_cast<std::uint64_t>(k), slot};
          out.violations.push_back(std::move(v));
        };
        if (axiom == Axiom::kInterimElementaryMonotonicity) {
          out.stats.comparisons += 2;
          if (qd[swap.raised] < q[swap.raised]) emit(swap.raised, Relation::kAtLeast, 0);
          if (qd[swap.lowered] > q[swap.lowered]) emit(swap.lowered, Relation::kAtMost, 1);
          continue;
        }
        const bool upper = axiom == Axiom::kInterimUpperInvariance;
        const int from = upper ? 0 : k + 2;
        const int to = upper ? k : n;
        for (int rank = from; rank < to; ++rank) {
          const ObjectIndex x = truth.ranking()[rank];
          ++out.stats.comparisons;
          if (qd[x] != q[x]) emit(x, Relation::kEqual, static_cast<std::uint64_t>(rank));
        }
      }
    }
  }
  return out;
}

}  // namespace

CheckOutcome check_obic(const InterimTable& t) {
  CheckOutcome out{Axiom::kObic, {}, {}};
  for (AgentIndex i = 0; i < t.n(); ++i) {
    for (std::size_t r = 0; r < t.reports().size(); ++r) {
      ++out.stats.profiles_checked;
      for (std::size_t d = 0; d < t.reports().size(); ++d) {
        if (d == r) continue;
        ++out.stats.comparisons;
        auto failure = first_fosd_failure(t.shares(i, r), t.shares(i, d), t.reports()[r]);
        if (!failure) continue;
        ViolationReport v = interim_report(Axiom::kObic, t, i, r, d);
        const auto top = t.reports()[r].ranking().first(failure->prefix_length);
        v.witness.assign(top.begin(), top.end());
        v.prefix_length = failure->prefix_length;
        v.relation = Relation::kAtLeast;
        v.lhs = std::move(failure->lhs);
        v.rhs = std::move(failure->rhs);
        v.order_key = {static_cast<std::uint64_t>(i), r, d};
        out.violations.push_back(std::move(v));
      }
    }
  }
  return out;
}

CheckOutcome check_interim_elementary_monotonicity(const InterimTable& t) {
  return interim_swap_check(Axiom::kInterimElementaryMonotonicity, t);
}

CheckOutcome check_interim_upper_invariance(const InterimTable& t) {
  return interim_swap_check(Axiom::kInterimUpperInvariance, t);
}

CheckOutcome check_interim_lower_invariance(const InterimTable& t) {
  return interim_swap_check(Axiom::kInterimLowerInvariance, t);
}

CheckOutcome check_obic(const Mechanism& m, const Prior& prior, const SweepOptions& options) {
  return check_obic(compute_interim_table(m, prior, options));
}

CheckOutcome check_interim_elementary_monotonicity(const Mechanism& m, const Prior& prior,
                                                   const SweepOptions& options) {
  return check_interim_elementary_monotonicity(compute_interim_table(m, prior, options));
}

CheckOutcome check_interim_upper_invariance(const Mechanism& m, const Prior& prior,
                                            const SweepOptions& options) {
  return check_interim_upper_invariance(compute_interim_table(m, prior, options));
}

CheckOutcome check_interim_lower_invariance(const Mechanism& m, const Prior& prior,
                                            const SweepOptions& options) {
  return check_interim_lower_invariance(compute_interim_table(m, prior, options));
}

bool replay_interim(const ViolationReport& v, const Mechanism& m, const Prior& prior,
                    const EnumerationLimits& limits) {
  if (!v.truthful || !v.deviation || v.agent < 0) return false;
  const auto truth = interim_share_vector(m, v.agent, *v.truthful, prior, limits).shares;
  const auto dev = interim_share_vector(m, v.agent, *v.deviation, prior, limits).shares;
  switch (v.axiom) {
    case Axiom::kObic: {
      Rational lhs;
      Rational rhs;
      for (int k = 0; k < v.prefix_length; ++k) {
        lhs += truth[v.truthful->ranking()[k]];
        rhs += dev[v.truthful->ranking()[k]];
      }
      return lhs == v.lhs && rhs == v.rhs && lhs < rhs;
    }
    case Axiom::kInterimElementaryMonotonicity:
    case Axiom::kInterimUpperInvariance:
    case Axiom::kInterimLowerInvariance: {
      if (v.witness.size() != 1 || swap_relation(*v.truthful, *v.deviation) != v.swap) {
        return false;
      }
      const ObjectIndex x = v.witness.front();
      if (dev[x] != v.lhs || truth[x] != v.rhs) return false;
      switch (v.relation) {
        case Relation::kAtLeast:
          return v.lhs < v.rhs;
        case Relation::kAtMost:
          return v.lhs > v.rhs;
        case Relation::kEqual:
          return v.lhs != v.rhs;
        case Relation::kNone:
          return false;
      }
      return false;
    }
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// Rank vectors

RankVectorReport rank_vector_report(const InterimTable& t, AgentIndex agent) {
  if (agent < 0 || agent >= t.n()) throw InputError("agent index out of range");
  RankVectorReport out;
  out.agent = agent;
  out.reports = t.reports();
  out.rank_invariant = true;
  out.rank_monotone = true;
  for (std::size_t r = 0; r < t.reports().size(); ++r) {
    const auto& shares = t.shares(agent, r);
    std::vector<Rational> by_rank;
    for (ObjectIndex a : t.reports()[r].ranking()) by_rank.push_back(shares[a]);
    for (std::size_t k = 0; k + 1 < by_rank.size(); ++k) {
      if (by_rank[k] < by_rank[k + 1]) out.rank_monotone = false;
    }
    if (!out.rank_vectors.empty() && by_rank != out.rank_vectors.front()) {
      out.rank_invariant = false;
    }
    out.shares.push_back(shares);
    out.rank_vectors.push_back(std::move(by_rank));
  }
  return out;
}

RankVectorReport rank_vector_report(const Mechanism& m, const Prior& prior, AgentIndex agent,
                                    const SweepOptions& options) {
  return rank_vector_report(compute_interim_table(m, prior, options), agent);
}

// ---------------------------------------------------------------------------
// Prior sampling

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform integer in [0, range) by rejection; portable, unlike std distributions.
std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t range) {
  const std::uint64_t limit = std::mt19937_64::max() - (std::mt19937_64::max() % range);
  while (true) {
    const std::uint64_t x = gen();
    if (x < limit) return x % range;
  }
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Integer grid point closest below the center, topped up to sum exactly to `grid`.
std::vector<std::int64_t> grid_base(const Prior& center, std::int64_t grid) {
  std::vector<std::int64_t> base;
  std::int64_t total = 0;
  for (const auto& p : center.probabilities()) {
    const mpq_class x = p.gmp() * grid;
    const mpz_class scaled = x.get_num() / x.get_den();
    base.push_back(scaled.get_si());
    total += base.back();
  }
  for (std::size_t k = 0; total < grid; ++k, ++total) ++base[k % base.size()];
  return base;
}

// Subtracts sum(offsets) spread evenly over the entries selected by `absorb`.
void rebalance(std::vector<std::int64_t>& offsets, const std::vector<bool>& absorb) {
  std::int64_t total = 0;
  for (auto d : offsets) total += d;
  const auto m = static_cast<std::int64_t>(std::count(absorb.begin(), absorb.end(), true));
  if (m == 0) return;
  const std::int64_t q = floor_div(total, m);
  std::int64_t rem = total - q * m;
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    if (!absorb[k]) continue;
    offsets[k] -= q;
    if (rem > 0) {
      --offsets[k];
      --rem;
    }
  }
}

}  // namespace

std::uint64_t derive_sample_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ index);
}

PriorBallSample sample_prior_in_ball(const Prior& center, const Rational& epsilon,
                                     std::uint64_t seed, const PriorSamplerConfig& config) {
  if (epsilon <= 0) throw InputError("epsilon must be positive");
  if (config.grid < 1) throw InputError("grid must be positive");
  if (config.max_attempts < 1) throw InputError("max_attempts must be positive");
  const std::size_t m = center.probabilities().size();
  std::vector<bool> targeted(m, false);
  for (auto k : config.targeted) {
    if (k >= m) throw InputError("targeted preference index out of range");
    targeted[k] = true;
  }
  const bool blind = config.targeted.empty();

  // Offsets stay strictly inside the ball before rebalancing: |d| <= ceil(eps*W) - 1.
  const mpq_class scaled = epsilon.gmp() * config.grid;
  const mpz_class ceil_scaled = (scaled.get_num() + scaled.get_den() - 1) / scaled.get_den();
  const std::int64_t radius =
      std::min<std::int64_t>(ceil_scaled.fits_slong_p() ? ceil_scaled.get_si() - 1 : config.grid,
                             config.grid);
  const std::vector<std::int64_t> base = grid_base(center, config.grid);
  const Rational grid(static_cast<long>(config.grid));

  std::mt19937_64 gen(seed);
  std::vector<std::int64_t> offsets(m);
  std::vector<bool> absorb(m);
  for (std::size_t k = 0; k < m; ++k) absorb[k] = blind || !targeted[k];

  for (int attempt = 1; attempt <= config.max_attempts; ++attempt) {
    for (std::size_t k = 0; k < m; ++k) {
      if (radius <= 0) {
        offsets[k] = 0;
      } else if (blind) {
        offsets[k] =
            static_cast<std::int64_t>(bounded(gen, static_cast<std::uint64_t>(2 * radius + 1))) -
            radius;
      } else {
        offsets[k] = targeted[k]
                         ? static_cast<std::int64_t>(
                               bounded(gen, static_cast<std::uint64_t>(radius + 1)))
                         : 0;
      }
    }
    rebalance(offsets, absorb);

    std::vector<Rational> probs;
    probs.reserve(m);
    bool ok = true;
    for (std::size_t k = 0; k < m && ok; ++k) {
      const std::int64_t x = base[k] + offsets[k];
      if (x < 0) {
        ok = false;
        break;
      }
      Rational p = Rational(static_cast<long>(x)) / grid;
      Rational gap = p - center[k];
      if (gap < 0) gap = -gap;
      if (gap >= epsilon) ok = false;
      probs.push_back(std::move(p));
    }
    if (ok) {
      return PriorBallSample{center, epsilon, seed, Prior(center.n(), std::move(probs)), attempt};
    }
    if (radius <= 0) break;  // every further attempt would draw the same point
  }
  throw SamplingExhausted("no grid prior inside the epsilon ball after " +
                          std::to_string(config.max_attempts) + " attempts (epsilon = " +
                          epsilon.str() + ", grid = " + std::to_string(config.grid) + ")");
}

std::vector<std::size_t> invariance_target(const Mechanism& m, const SweepOptions& options) {
  SweepOptions first = options;
  first.mode = SweepMode::kFirstViolation;
  const auto outcomes =
      check_swap_axioms(m, {Axiom::kUpperInvariance, Axiom::kLowerInvariance}, first);
  const ViolationReport* earliest = nullptr;
  for (const auto& o : outcomes) {
    if (o.violations.empty()) continue;
    const auto& v = o.violations.front();
    if (earliest == nullptr || v.order_key < earliest->order_key) earliest = &v;
  }
  std::vector<std::size_t> target;
  if (earliest == nullptr) return target;
  for (AgentIndex j = 0; j < earliest->profile->size(); ++j) {
    if (j == earliest->agent) continue;
    const auto k = static_cast<std::size_t>((*earliest->profile)[j].lex_index());
    if (std::find(target.begin(), target.end(), k) == target.end()) target.push_back(k);
  }
  std::sort(target.begin(), target.end());
  return target;
}

std::optional<LrobicViolation> lrobic_search(const Mechanism& m, const Prior& center,
                                             const Rational& epsilon, int samples,
                                             std::uint64_t seed, const LrobicOptions& options) {
  if (samples < 1) throw InputError("samples must be at least 1");
  require_matching(m, center);
  PriorSamplerConfig sampler = options.sampler;
  if (options.targeted) sampler.targeted = invariance_target(m, options.sweep);

  for (int s = 0; s < samples; ++s) {
    const auto index = static_cast<std::uint64_t>(s);
    PriorBallSample drawn =
        sample_prior_in_ball(center, epsilon, derive_sample_seed(seed, index), sampler);
    CheckOutcome outcome = check_obic(m, drawn.sample, options.sweep);
    if (!outcome.satisfied()) {
      return LrobicViolation{index, std::move(drawn), std::move(outcome.violations.front())};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Decomposition of OBIC into interim axioms

ObicDecomposition obic_decomposition_report(const InterimTable& t) {
  ObicDecomposition d{check_obic(t), check_interim_elementary_monotonicity(t),
                      check_interim_upper_invariance(t), check_interim_lower_invariance(t)};
  const bool axioms_hold = d.elementary_monotonicity.satisfied() &&
                           d.upper_invariance.satisfied() && d.lower_invariance.satisfied();
  if (d.obic.satisfied() != axioms_hold) {
    throw InternalError("OBIC verdict disagrees with the conjunction of the interim axioms");
  }
  for (const auto* outcome : {&d.elementary_monotonicity, &d.upper_invariance,
                              &d.lower_invariance}) {
    for (const auto& v : outcome->violations) {
      const bool matched = std::any_of(
          d.obic.violations.begin(), d.obic.violations.end(), [&](const ViolationReport& o) {
            return o.agent == v.agent &&
                   ((o.truthful == v.truthful && o.deviation == v.deviation) ||
                    (o.truthful == v.deviation && o.deviation == v.truthful));
          });
      if (!matched) {
        throw InternalError("interim axiom violation without an OBIC violation at the same swap");
      }
    }
  }
  return d;
}

ObicDecomposition obic_decomposition_report(const Mechanism& m, const Prior& prior,
                                            const SweepOptions& options) {
  return obic_decomposition_report(compute_interim_table(m, prior, options));
}

}  // namespace ram
