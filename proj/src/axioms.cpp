#include "ram/axioms.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <limits>

#include "ram/lp.hpp"
#include "ram/parallel.hpp"

namespace ram {

namespace {

constexpr std::array<std::pair<Axiom, std::string_view>, 13> kAxiomNames{{
    {Axiom::kStrategyProofness, "sp"},
    {Axiom::kWeakStrategyProofness, "weak-sp"},
    {Axiom::kElementaryMonotonicity, "em"},
    {Axiom::kNeutrality, "neutral"},
    {Axiom::kUpperInvariance, "ui"},
    {Axiom::kLowerInvariance, "li"},
    {Axiom::kEqualTreatment, "ete"},
    {Axiom::kOrdinalEfficiency, "oe"},
    {Axiom::kExPostEfficiency, "ex-post"},
    {Axiom::kObic, "obic"},
    {Axiom::kInterimElementaryMonotonicity, "interim-em"},
    {Axiom::kInterimUpperInvariance, "interim-ui"},
    {Axiom::kInterimLowerInvariance, "interim-li"},
}};

constexpr std::uint64_t kNoViolation = std::numeric_limits<std::uint64_t>::max();

bool holds(Relation relation, const Rational& lhs, const Rational& rhs) {
  switch (relation) {
    case Relation::kAtLeast:
      return lhs >= rhs;
    case Relation::kAtMost:
      return lhs <= rhs;
    case Relation::kEqual:
      return lhs == rhs;
    case Relation::kNone:
      return true;
  }
  return true;
}

void atomic_min(std::atomic<std::uint64_t>& target, std::uint64_t value) {
  std::uint64_t current = target.load();
  while (value < current && !target.compare_exchange_weak(current, value)) {
  }
}

std::vector<ViolationReport> merge_sorted(std::vector<std::vector<ViolationReport>> parts,
                                          bool all) {
  std::vector<ViolationReport> merged;
  for (auto& part : parts) {
    std::move(part.begin(), part.end(), std::back_inserter(merged));
  }
  std::sort(merged.begin(), merged.end(),
            [](const ViolationReport& a, const ViolationReport& b) {
              return a.order_key < b.order_key;
            });
  if (!all && merged.size() > 1) merged.resize(1);
  return merged;
}

// ---------------------------------------------------------------------------
// Cell sweep: one cell = (agent i, opponent profile P_{-i}); the agent's row
// under every possible report is computed once and shared by all checks.

struct CellContext {
  AgentIndex agent;
  std::uint64_t cell;
  const std::vector<Preference>& prefs;
  const std::vector<std::vector<std::uint32_t>>& swaps;  // swaps[r][k]: index of swap at k
  const std::vector<std::vector<Rational>>& rows;        // rows[r] = Q_i(prefs[r], P_{-i})
  const Profile& base;
};

using CellCheck =
    std::function<void(const CellContext&, std::vector<ViolationReport>&, CheckStats&)>;

std::vector<std::vector<std::uint32_t>> swap_table(const std::vector<Preference>& prefs) {
  const int n = prefs.front().size();
  std::vector<std::vector<std::uint32_t>> table(prefs.size());
  for (std::size_t r = 0; r < prefs.size(); ++r) {
    for (int k = 0; k + 1 < n; ++k) {
      table[r].push_back(static_cast<std::uint32_t>(prefs[r].swapped_at(k).lex_index()));
    }
  }
  return table;
}

std::vector<CheckOutcome> sweep_cells(const Mechanism& m,
                                      const std::vector<std::pair<Axiom, CellCheck>>& checks,
                                      const SweepOptions& options) {
  const int n = m.n();
  const bool all = collect_all(options, n);
  const OpponentProfiles first_agent(n, 0, options.limits);
  const std::vector<Preference>& prefs = first_agent.preferences();
  const auto swaps = swap_table(prefs);
  std::vector<OpponentProfiles> opponents;
  for (AgentIndex i = 0; i < n; ++i) opponents.emplace_back(n, i, options.limits);
  const std::uint64_t per_agent = first_agent.count();
  const std::uint64_t cells = per_agent * static_cast<std::uint64_t>(n);

  const int threads = resolve_threads(options.threads);
  const std::size_t c = checks.size();
  std::vector<std::atomic<std::uint64_t>> bound(c);
  for (auto& b : bound) b = kNoViolation;

  struct WorkerState {
    std::vector<std::vector<ViolationReport>> found;
    std::vector<CheckStats> stats;
  };
  std::vector<WorkerState> state(threads);
  for (auto& s : state) {
    s.found.resize(c);
    s.stats.resize(c);
  }

  parallel_chunks(cells, threads, 64, [&](std::uint64_t begin, std::uint64_t end, int worker) {
    auto& ws = state[worker];
    Profile profile(std::vector<Preference>(n, prefs.front()));
    std::vector<std::vector<Rational>> rows(prefs.size());
    std::vector<bool> active(c);
    for (std::uint64_t cell = begin; cell < end; ++cell) {
      bool any = false;
      for (std::size_t j = 0; j < c; ++j) {
        active[j] = all || cell <= bound[j].load(std::memory_order_relaxed);
        any = any || active[j];
      }
      if (!any) return;

      const auto agent = static_cast<AgentIndex>(cell / per_agent);
      opponents[agent].fill(cell % per_agent, profile);
      for (std::size_t r = 0; r < prefs.size(); ++r) {
        profile.set(agent, prefs[r]);
        const Assignment q = m.evaluate(profile);
        const auto row = q.row(agent);
        rows[r].assign(row.begin(), row.end());
      }
      const CellContext ctx{agent, cell, prefs, swaps, rows, profile};
      for (std::size_t j = 0; j < c; ++j) {
        if (!active[j]) continue;
        const std::size_t before = ws.found[j].size();
        ws.stats[j].profiles_checked += prefs.size();
        checks[j].second(ctx, ws.found[j], ws.stats[j]);
        if (!all && ws.found[j].size() > before) atomic_min(bound[j], cell);
      }
    }
  });

  std::vector<CheckOutcome> outcomes;
  for (std::size_t j = 0; j < c; ++j) {
    std::vector<std::vector<ViolationReport>> parts;
    CheckStats stats;
    for (auto& ws : state) {
      parts.push_back(std::move(ws.found[j]));
      stats.profiles_checked += ws.stats[j].profiles_checked;
      stats.comparisons += ws.stats[j].comparisons;
    }
    outcomes.push_back(CheckOutcome{checks[j].first, merge_sorted(std::move(parts), all), stats});
  }
  return outcomes;
}

ViolationReport cell_report(Axiom axiom, const CellContext& ctx, std::size_t truthful,
                            std::size_t deviation) {
  ViolationReport v;
  v.axiom = axiom;
  v.agent = ctx.agent;
  v.profile = ctx.base.with(ctx.agent, ctx.prefs[truthful]);
  v.truthful = ctx.prefs[truthful];
  v.deviation = ctx.prefs[deviation];
  return v;
}

void check_sp_cell(const CellContext& ctx, std::vector<ViolationReport>& out, CheckStats& stats) {
  for (std::size_t r = 0; r < ctx.prefs.size(); ++r) {
    for (std::size_t d = 0; d < ctx.prefs.size(); ++d) {
      if (d == r) continue;
      ++stats.comparisons;
      auto failure = first_fosd_failure(ctx.rows[r], ctx.rows[d], ctx.prefs[r]);
      if (!failure) continue;
      ViolationReport v = cell_report(Axiom::kStrategyProofness, ctx, r, d);
      const auto top = ctx.prefs[r].ranking().first(failure->prefix_length);
      v.witness.assign(top.begin(), top.end());
      v.prefix_length = failure->prefix_length;
      v.relation = Relation::kAtLeast;
      v.lhs = std::move(failure->lhs);
      v.rhs = std::move(failure->rhs);
      v.order_key = {ctx.cell, r, d};
      out.push_back(std::move(v));
    }
  }
}

// First prefix where `better` strictly exceeds `base`, assuming it weakly dominates.
std::optional<FosdFailure> strict_gain(std::span<const Rational> base,
                                       std::span<const Rational> better, const Preference& pref) {
  Rational lhs;
  Rational rhs;
  for (int k = 0; k < pref.size(); ++k) {
    lhs += base[pref.ranking()[k]];
    rhs += better[pref.ranking()[k]];
    if (lhs < rhs) return FosdFailure{k + 1, lhs, rhs};
  }
  return std::nullopt;
}

void check_weak_sp_cell(const CellContext& ctx, std::vector<ViolationReport>& out,
                        CheckStats& stats) {
  for (std::size_t r = 0; r < ctx.prefs.size(); ++r) {
    for (std::size_t d = 0; d < ctx.prefs.size(); ++d) {
      if (d == r) continue;
      ++stats.comparisons;
      if (ctx.rows[d] == ctx.rows[r] || !fosd(ctx.rows[d], ctx.rows[r], ctx.prefs[r])) continue;
      auto gain = strict_gain(ctx.rows[r], ctx.rows[d], ctx.prefs[r]);
      if (!gain) throw InternalError("distinct dominating share vector without a strict prefix");
      ViolationReport v = cell_report(Axiom::kWeakStrategyProofness, ctx, r, d);
      const auto top = ctx.prefs[r].ranking().first(gain->prefix_length);
      v.witness.assign(top.begin(), top.end());
      v.prefix_length = gain->prefix_length;
      v.relation = Relation::kAtLeast;
      v.lhs = std::move(gain->lhs);
      v.rhs = std::move(gain->rhs);
      v.order_key = {ctx.cell, r, d};
      out.push_back(std::move(v));
    }
  }
}

// Shared body of the swap-based axioms: visits every (report, swap position).
template <typename Body>
void for_each_swap(const CellContext& ctx, Body body) {
  const int n = ctx.prefs.front().size();
  for (std::size_t r = 0; r < ctx.prefs.size(); ++r) {
    for (int k = 0; k + 1 < n; ++k) body(r, static_cast<std::size_t>(ctx.swaps[r][k]), k);
  }
}

void push_swap_report(Axiom axiom, const CellContext& ctx, std::size_t r, std::size_t d, int k,
                      ObjectIndex x, Relation relation, std::uint64_t slot,
                      std::vector<ViolationReport>& out) {
  ViolationReport v = cell_report(axiom, ctx, r, d);
  v.swap = SwapInfo{k, ctx.prefs[r].ranking()[k], ctx.prefs[r].ranking()[k + 1]};
  v.witness = {x};
  v.relation = relation;
  v.lhs = ctx.rows[d][x];
  v.rhs = ctx.rows[r][x];
  v.order_key = {ctx.cell, r, static_cast<std::uint64_t>(k), slot};
  out.push_back(std::move(v));
}

void check_em_cell(const CellContext& ctx, std::vector<ViolationReport>& out, CheckStats& stats) {
  for_each_swap(ctx, [&](std::size_t r, std::size_t d, int k) {
    const ObjectIndex a = ctx.prefs[r].ranking()[k];
    const ObjectIndex b = ctx.prefs[r].ranking()[k + 1];
    stats.comparisons += 2;
    if (ctx.rows[d][b] < ctx.rows[r][b]) {
      push_swap_report(Axiom::kElementaryMonotonicity, ctx, r, d, k, b, Relation::kAtLeast, 0,
                       out);
    }
    if (ctx.rows[d][a] > ctx.rows[r][a]) {
      push_swap_report(Axiom::kElementaryMonotonicity, ctx, r, d, k, a, Relation::kAtMost, 1, out);
    }
  });
}

void check_invariance_cell(Axiom axiom, bool upper, const CellContext& ctx,
                           std::vector<ViolationReport>& out, CheckStats& stats) {
  const int n = ctx.prefs.front().size();
  for_each_swap(ctx, [&](std::size_t r, std::size_t d, int k) {
    const int from = upper ? 0 : k + 2;
    const int to = upper ? k : n;
    for (int rank = from; rank < to; ++rank) {
      const ObjectIndex x = ctx.prefs[r].ranking()[rank];
      ++stats.comparisons;
      if (ctx.rows[d][x] != ctx.rows[r][x]) {
        push_swap_report(axiom, ctx, r, d, k, x, Relation::kEqual,
                         static_cast<std::uint64_t>(rank), out);
      }
    }
  });
}

CellCheck cell_check_for(Axiom axiom) {
  switch (axiom) {
    case Axiom::kStrategyProofness:
      return check_sp_cell;
    case Axiom::kWeakStrategyProofness:
      return check_weak_sp_cell;
    case Axiom::kElementaryMonotonicity:
      return check_em_cell;
    case Axiom::kUpperInvariance:
      return [](const CellContext& c, auto& out, auto& stats) {
        check_invariance_cell(Axiom::kUpperInvariance, true, c, out, stats);
      };
    case Axiom::kLowerInvariance:
      return [](const CellContext& c, auto& out, auto& stats) {
        check_invariance_cell(Axiom::kLowerInvariance, false, c, out, stats);
      };
    default:
      throw InputError("axiom '" + std::string(axiom_name(axiom)) +
                       "' is not checked per (agent, opponent profile)");
  }
}

// ---------------------------------------------------------------------------
// Profile sweep: every profile of the domain, one evaluation each.

using ProfileCheck = std::function<void(std::uint64_t index, const Profile&, const Assignment&,
                                        std::vector<ViolationReport>&, CheckStats&)>;

CheckOutcome sweep_profiles(Axiom axiom, const Mechanism& m, const ProfileCheck& check,
                            const SweepOptions& options) {
  const int n = m.n();
  const bool all = collect_all(options, n);
  const ProfileSpace space(n, options.limits);
  const int threads = resolve_threads(options.threads);
  std::atomic<std::uint64_t> bound{kNoViolation};
  std::vector<std::vector<ViolationReport>> found(threads);
  std::vector<CheckStats> stats(threads);

  parallel_chunks(space.count(), threads, 16, [&](std::uint64_t begin, std::uint64_t end, int w) {
    Profile profile = space.profile(begin);
    for (std::uint64_t k = begin; k < end; ++k) {
      if (!all && k > bound.load(std::memory_order_relaxed)) return;
      space.fill(k, profile);
      const Assignment q = m.evaluate(profile);
      const std::size_t before = found[w].size();
      ++stats[w].profiles_checked;
      check(k, profile, q, found[w], stats[w]);
      if (!all && found[w].size() > before) atomic_min(bound, k);
    }
  });

  CheckStats total;
  for (const auto& s : stats) {
    total.profiles_checked += s.profiles_checked;
    total.comparisons += s.comparisons;
  }
  return CheckOutcome{axiom, merge_sorted(std::move(found), all), total};
}

std::vector<ObjectPermutation> all_object_permutations(int n, const EnumerationLimits& limits) {
  std::vector<ObjectPermutation> out;
  for (const auto& p : enumerate_preferences(n, limits)) {
    const auto r = p.ranking();
    out.emplace_back(std::vector<ObjectIndex>(r.begin(), r.end()));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view axiom_name(Axiom axiom) {
  for (const auto& [a, name] : kAxiomNames) {
    if (a == axiom) return name;
  }
  return "unknown";
}

Axiom parse_axiom(std::string_view name) {
  for (const auto& [a, n] : kAxiomNames) {
    if (n == name) return a;
  }
  throw InputError("unknown axiom '" + std::string(name) + "'");
}

bool is_interim(Axiom axiom) {
  return axiom == Axiom::kObic || axiom == Axiom::kInterimElementaryMonotonicity ||
         axiom == Axiom::kInterimUpperInvariance || axiom == Axiom::kInterimLowerInvariance;
}

bool collect_all(const SweepOptions& options, int n) {
  switch (options.mode) {
    case SweepMode::kExhaustive:
      return true;
    case SweepMode::kFirstViolation:
      return false;
    case SweepMode::kAuto:
      return n <= 3;
  }
  return true;
}

std::vector<CheckOutcome> check_swap_axioms(const Mechanism& m, const std::vector<Axiom>& axioms,
                                            const SweepOptions& options) {
  std::vector<std::pair<Axiom, CellCheck>> checks;
  for (Axiom a : axioms) checks.emplace_back(a, cell_check_for(a));
  return sweep_cells(m, checks, options);
}

namespace {
CheckOutcome single_cell_axiom(Axiom a, const Mechanism& m, const SweepOptions& options) {
  return std::move(check_swap_axioms(m, {a}, options).front());
}
}  // namespace

CheckOutcome check_strategy_proofness(const Mechanism& m, const SweepOptions& options) {
  return single_cell_axiom(Axiom::kStrategyProofness, m, options);
}

CheckOutcome check_weak_strategy_proofness(const Mechanism& m, const SweepOptions& options) {
  return single_cell_axiom(Axiom::kWeakStrategyProofness, m, options);
}

CheckOutcome check_elementary_monotonicity(const Mechanism& m, const SweepOptions& options) {
  return single_cell_axiom(Axiom::kElementaryMonotonicity, m, options);
}

CheckOutcome check_upper_invariance(const Mechanism& m, const SweepOptions& options) {
  return single_cell_axiom(Axiom::kUpperInvariance, m, options);
}

CheckOutcome check_lower_invariance(const Mechanism& m, const SweepOptions& options) {
  return single_cell_axiom(Axiom::kLowerInvariance, m, options);
}

CheckOutcome check_neutrality(const Mechanism& m, const SweepOptions& options) {
  const int n = m.n();
  const auto sigmas = all_object_permutations(n, options.limits);
  return sweep_profiles(
      Axiom::kNeutrality, m,
      [&](std::uint64_t index, const Profile& profile, const Assignment& q,
          std::vector<ViolationReport>& out, CheckStats& stats) {
        for (std::size_t s = 0; s < sigmas.size(); ++s) {
          const auto& sigma = sigmas[s];
          const Assignment permuted = m.evaluate(apply_permutation(profile, sigma));
          for (AgentIndex i = 0; i < n; ++i) {
            for (ObjectIndex a = 0; a < n; ++a) {
              ++stats.comparisons;
              if (q(i, a) == permuted(i, sigma(a))) continue;
              ViolationReport v;
              v.axiom = Axiom::kNeutrality;
              v.agent = i;
              v.profile = profile;
              v.truthful = profile[i];
              v.permutation = sigma;
              v.witness = {a};
              v.relation = Relation::kEqual;
              v.lhs = q(i, a);
              v.rhs = permuted(i, sigma(a));
              v.order_key = {index, s, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(a)};
              out.push_back(std::move(v));
            }
          }
        }
      },
      options);
}

CheckOutcome check_equal_treatment_of_equals(const Mechanism& m, const SweepOptions& options) {
  const int n = m.n();
  return sweep_profiles(
      Axiom::kEqualTreatment, m,
      [n](std::uint64_t index, const Profile& profile, const Assignment& q,
          std::vector<ViolationReport>& out, CheckStats& stats) {
        for (AgentIndex i = 0; i < n; ++i) {
          for (AgentIndex j = i + 1; j < n; ++j) {
            if (profile[i] != profile[j]) continue;
            ++stats.comparisons;
            for (ObjectIndex a = 0; a < n; ++a) {
              if (q(i, a) == q(j, a)) continue;
              ViolationReport v;
              v.axiom = Axiom::kEqualTreatment;
              v.agent = i;
              v.other_agent = j;
              v.profile = profile;
              v.truthful = profile[i];
              v.witness = {a};
              v.relation = Relation::kEqual;
              v.lhs = q(i, a);
              v.rhs = q(j, a);
              v.order_key = {index, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)};
              out.push_back(std::move(v));
              break;
            }
          }
        }
      },
      options);
}

CheckOutcome check_ordinal_efficiency(const Mechanism& m, const SweepOptions& options) {
  return sweep_profiles(
      Axiom::kOrdinalEfficiency, m,
      [](std::uint64_t index, const Profile& profile, const Assignment& q,
         std::vector<ViolationReport>& out, CheckStats& stats) {
        ++stats.comparisons;
        auto result = check_ordinal_efficiency(q, profile);
        if (result.efficient) return;
        ViolationReport v;
        v.axiom = Axiom::kOrdinalEfficiency;
        v.profile = profile;
        v.witness = std::move(result.cycle);
        v.order_key = {index};
        out.push_back(std::move(v));
      },
      options);
}

CheckOutcome check_ex_post_efficiency(const Mechanism& m, const SweepOptions& options) {
  return sweep_profiles(
      Axiom::kExPostEfficiency, m,
      [](std::uint64_t index, const Profile& profile, const Assignment& q,
         std::vector<ViolationReport>& out, CheckStats& stats) {
        const Decomposition d = birkhoff_decompose(q);
        for (std::size_t t = 0; t < d.size(); ++t) {
          ++stats.comparisons;
          auto cycle = improvement_cycle(d.terms()[t].component, profile);
          if (cycle.empty()) continue;
          ViolationReport v;
          v.axiom = Axiom::kExPostEfficiency;
          v.profile = profile;
          v.component = d.terms()[t].component;
          v.witness = std::move(cycle);
          v.lhs = d.terms()[t].weight;
          v.order_key = {index, t};
          out.push_back(std::move(v));
          return;
        }
      },
      options);
}

CheckOutcome check_axiom(Axiom axiom, const Mechanism& m, const SweepOptions& options) {
  switch (axiom) {
    case Axiom::kNeutrality:
      return check_neutrality(m, options);
    case Axiom::kEqualTreatment:
      return check_equal_treatment_of_equals(m, options);
    case Axiom::kOrdinalEfficiency:
      return check_ordinal_efficiency(m, options);
    case Axiom::kExPostEfficiency:
      return check_ex_post_efficiency(m, options);
    default:
      if (is_interim(axiom)) {
        throw InputError("axiom '" + std::string(axiom_name(axiom)) + "' needs a prior");
      }
      return single_cell_axiom(axiom, m, options);
  }
}

// ---------------------------------------------------------------------------
// Efficiency of a single assignment

std::vector<std::vector<bool>> tau_relation(const Assignment& l, const Profile& profile) {
  const int n = l.size();
  if (profile.size() != n) throw InputError("profile size does not match assignment");
  std::vector<std::vector<bool>> tau(n, std::vector<bool>(n, false));
  for (AgentIndex i = 0; i < n; ++i) {
    const auto ranking = profile[i].ranking();
    for (int hi = 0; hi < n; ++hi) {
      for (int lo = hi + 1; lo < n; ++lo) {
        if (l(i, ranking[lo]) > 0) tau[ranking[hi]][ranking[lo]] = true;
      }
    }
  }
  return tau;
}

OrdinalEfficiencyResult check_ordinal_efficiency(const Assignment& l, const Profile& profile) {
  OrdinalEfficiencyResult r;
  r.cycle = find_cycle(tau_relation(l, profile));
  r.efficient = r.cycle.empty();
  return r;
}

LpDominanceResult lp_dominance(const Assignment& l, const Profile& profile, int max_n) {
  const int n = l.size();
  if (profile.size() != n) throw InputError("profile size does not match assignment");
  if (n > max_n) {
    throw ResourceError("dominance LP cap exceeded: n = " + std::to_string(n) +
                        " > " + std::to_string(max_n));
  }
  // Variables: M_ia (n*n), then slack s_{i,l} for prefixes l = 1..n-1.
  const int cells = n * n;
  const int prefixes = n - 1;
  LinearProgram lp;
  lp.variables = cells + n * prefixes;
  lp.objective.assign(lp.variables, Rational(0));
  for (int j = cells; j < lp.variables; ++j) lp.objective[j] = 1;
  auto var = [n](AgentIndex i, ObjectIndex a) { return i * n + a; };

  for (AgentIndex i = 0; i < n; ++i) {
    std::vector<Rational> row(lp.variables);
    for (ObjectIndex a = 0; a < n; ++a) row[var(i, a)] = 1;
    lp.rows.push_back(std::move(row));
    lp.rhs.emplace_back(1);
  }
  for (ObjectIndex a = 0; a < n; ++a) {
    std::vector<Rational> row(lp.variables);
    for (AgentIndex i = 0; i < n; ++i) row[var(i, a)] = 1;
    lp.rows.push_back(std::move(row));
    lp.rhs.emplace_back(1);
  }
  for (AgentIndex i = 0; i < n; ++i) {
    Rational prefix;
    for (int len = 1; len <= prefixes; ++len) {
      std::vector<Rational> row(lp.variables);
      for (int k = 0; k < len; ++k) row[var(i, profile[i].ranking()[k])] = 1;
      prefix += l(i, profile[i].ranking()[len - 1]);
      row[cells + i * prefixes + (len - 1)] = -1;
      lp.rows.push_back(std::move(row));
      lp.rhs.push_back(prefix);
    }
  }

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpSolution::Status::kOptimal) {
    throw InternalError("dominance LP must be feasible and bounded");
  }
  LpDominanceResult result;
  result.optimum = sol.value;
  if (sol.value > 0) {
    result.dominating =
        validate_assignment(n, std::vector<Rational>(sol.x.begin(), sol.x.begin() + cells));
  }
  return result;
}

std::optional<Assignment> lp_dominance_oracle(const Assignment& l, const Profile& profile) {
  return lp_dominance(l, profile).dominating;
}

bool check_ex_post_efficiency(const Assignment& l, const Profile& profile) {
  const Decomposition d = birkhoff_decompose(l);
  return std::all_of(d.terms().begin(), d.terms().end(), [&](const DecompositionTerm& t) {
    return deterministic_pareto_efficient(t.component, profile);
  });
}

// ---------------------------------------------------------------------------
// Replay

bool replay(const ViolationReport& v, const Mechanism& m) {
  if (!v.profile) return false;
  const Profile& profile = *v.profile;
  const Assignment q = m.evaluate(profile);
  switch (v.axiom) {
    case Axiom::kStrategyProofness:
    case Axiom::kWeakStrategyProofness: {
      if (!v.deviation || v.agent < 0) return false;
      const Assignment dev = m.evaluate(profile.with(v.agent, *v.deviation));
      const Preference& truth = profile[v.agent];
      Rational lhs;
      Rational rhs;
      for (int k = 0; k < v.prefix_length; ++k) {
        lhs += q(v.agent, truth.ranking()[k]);
        rhs += dev(v.agent, truth.ranking()[k]);
      }
      if (lhs != v.lhs || rhs != v.rhs || !(lhs < rhs)) return false;
      if (v.axiom == Axiom::kWeakStrategyProofness) {
        return fosd(dev.row(v.agent), q.row(v.agent), truth);
      }
      return true;
    }
    case Axiom::kElementaryMonotonicity:
    case Axiom::kUpperInvariance:
    case Axiom::kLowerInvariance: {
      if (!v.deviation || !v.swap || v.witness.size() != 1) return false;
      if (swap_relation(profile[v.agent], *v.deviation) != v.swap) return false;
      const Assignment dev = m.evaluate(profile.with(v.agent, *v.deviation));
      const ObjectIndex x = v.witness.front();
      return dev(v.agent, x) == v.lhs && q(v.agent, x) == v.rhs &&
             !holds(v.relation, v.lhs, v.rhs);
    }
    case Axiom::kNeutrality: {
      if (!v.permutation || v.witness.size() != 1) return false;
      const Assignment permuted = m.evaluate(apply_permutation(profile, *v.permutation));
      const ObjectIndex a = v.witness.front();
      return q(v.agent, a) == v.lhs && permuted(v.agent, (*v.permutation)(a)) == v.rhs &&
             v.lhs != v.rhs;
    }
    case Axiom::kEqualTreatment: {
      if (!v.other_agent || v.witness.size() != 1) return false;
      const ObjectIndex a = v.witness.front();
      return profile[v.agent] == profile[*v.other_agent] && q(v.agent, a) == v.lhs &&
             q(*v.other_agent, a) == v.rhs && v.lhs != v.rhs;
    }
    case Axiom::kOrdinalEfficiency: {
      if (v.witness.size() < 2) return false;
      const auto tau = tau_relation(q, profile);
      for (std::size_t k = 0; k < v.witness.size(); ++k) {
        if (!tau[v.witness[k]][v.witness[(k + 1) % v.witness.size()]]) return false;
      }
      return true;
    }
    case Axiom::kExPostEfficiency: {
      if (!v.component) return false;
      const Decomposition d = birkhoff_decompose(q);
      for (const auto& t : d.terms()) {
        if (t.component == *v.component) {
          return t.weight == v.lhs && improvement_cycle(t.component, profile) == v.witness;
        }
      }
      return false;
    }
    default:
      return false;
  }
}

}  // namespace ram
