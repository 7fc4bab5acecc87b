// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>

#include "helpers.hpp"
#include "oracles.hpp"
#include "ram/axioms.hpp"
#include "ram/decomp.hpp"
#include "ram/interim.hpp"

using namespace ram;
using testing::P;
using testing::profile;
using testing::R;
using testing::row;

namespace {

struct Criterion {
  int number;
  std::string title;
  double seconds;  // time limit, 0 for none
  std::function<std::string()> body;  // empty string on success, else the reason
};

SweepOptions exhaustive() {
  SweepOptions o;
  o.mode = SweepMode::kExhaustive;
  return o;
}

std::string expect(bool ok, const std::string& what) { return ok ? "" : what; }

std::vector<Rational> prior_vector(const Prior& p) { return {p.probabilities().begin(), p.probabilities().end()}; }

EatingSpeedSchedule uneven_speeds() {
  std::vector<std::vector<SpeedPiece>> pieces(3, {SpeedPiece{R(0), R(1), R(1)}});
  pieces[0] = {SpeedPiece{R(0), R(1, 2), R(2)}, SpeedPiece{R(1, 2), R(1), R(0)}};
  return EatingSpeedSchedule(pieces);
}

std::string table_one() {
  const Assignment truth = probabilistic_serial(profile({"cab", "abc", "cab"}));
  const Assignment lie = probabilistic_serial(profile({"acb", "abc", "cab"}));
  const auto t = truth.rows()[0];
  const auto d = lie.rows()[0];
  if (t != row({R(1, 6), R(1, 3), R(1, 2)})) return "truthful row differs";
  if (d != row({R(1, 2), R(1, 4), R(1, 4)})) return "manipulated row differs";
  if (fosd(truth.row(0), lie.row(0), P("cab")) || fosd(lie.row(0), truth.row(0), P("cab"))) {
    return "rows are comparable under c>a>b";
  }
  return "";
}

std::string ps_sweep() {
  const Mechanism ps = make_probabilistic_serial(3);
  const auto o = exhaustive();
  for (Axiom a : {Axiom::kElementaryMonotonicity, Axiom::kNeutrality, Axiom::kEqualTreatment,
                  Axiom::kWeakStrategyProofness, Axiom::kUpperInvariance, Axiom::kOrdinalEfficiency}) {
    if (!check_axiom(a, ps, o).satisfied()) return std::string(axiom_name(a)) + " violated";
  }
  for (Axiom a : {Axiom::kStrategyProofness, Axiom::kLowerInvariance}) {
    const CheckOutcome out = check_axiom(a, ps, o);
    if (out.satisfied()) return std::string(axiom_name(a)) + " satisfied";
    for (const auto& v : out.violations) {
      if (!replay(v, ps)) return std::string(axiom_name(a)) + " witness does not replay";
    }
  }
  return "";
}

std::string uniform_certificate() {
  const std::vector<Mechanism> ms{make_probabilistic_serial(3), make_random_priority(3),
                                  make_simultaneous_eating(uneven_speeds())};
  for (const auto& m : ms) {
    if (!check_obic(m, uniform_prior(3), exhaustive()).satisfied()) return m.descriptor() + " not obic";
    for (AgentIndex i = 0; i < 3; ++i) {
      const auto r = rank_vector_report(m, uniform_prior(3), i);
      if (!r.rank_invariant || !r.rank_monotone) return m.descriptor() + " rank flags false";
    }
  }
  return "";
}

std::string biconditional_at(const Mechanism& m, const Prior& prior) {
  try {
    const auto d = obic_decomposition_report(m, prior);
    const bool all = d.elementary_monotonicity.satisfied() && d.upper_invariance.satisfied() &&
                     d.lower_invariance.satisfied();
    return expect(d.obic.satisfied() == all, m.descriptor() + ": verdicts disagree");
  } catch (const InternalError& e) {
    return m.descriptor() + ": " + e.what();
  }
}

std::string decomposition() {
  const Mechanism ps = make_probabilistic_serial(3);
  if (auto e = biconditional_at(ps, uniform_prior(3)); !e.empty()) return e;
  if (auto e = biconditional_at(make_random_priority(3), uniform_prior(3)); !e.empty()) return e;
  // The priors drawn by the blind search in the falsification criterion.
  for (std::uint64_t k = 0; k < 100; ++k) {
    const Prior prior = sample_prior_in_ball(uniform_prior(3), R(1, 20), derive_sample_seed(1, k)).sample;
    if (auto e = biconditional_at(ps, prior); !e.empty()) return e + " at sample " + std::to_string(k);
  }
  return "";
}

// Recomputes both interim vectors of the witness with the naive eater.
bool naive_recheck(const ViolationReport& v, const Prior& prior) {
  const auto eat = [](const auto& prefs) { return oracle::eat(prefs); };
  const oracle::Ranking truth(v.truthful->ranking().begin(), v.truthful->ranking().end());
  const oracle::Ranking dev(v.deviation->ranking().begin(), v.deviation->ranking().end());
  const auto q = oracle::interim(eat, 3, v.agent, truth, prior_vector(prior));
  const auto q_dev = oracle::interim(eat, 3, v.agent, dev, prior_vector(prior));
  return !oracle::dominates(q, q_dev, truth);
}

std::string falsification() {
  const Mechanism ps = make_probabilistic_serial(3);
  const Prior center = uniform_prior(3);
  const auto blind = lrobic_search(ps, center, R(1, 20), 100, 1);
  if (!blind) return "no violating prior in 100 blind samples";
  if (!naive_recheck(blind->witness, blind->prior.sample)) return "blind witness does not recheck";
  LrobicOptions targeted;
  targeted.targeted = true;
  const auto fast = lrobic_search(ps, center, R(1, 20), 10, 1, targeted);
  if (!fast) return "no violating prior in 10 targeted samples";
  if (!naive_recheck(fast->witness, fast->prior.sample)) return "targeted witness does not recheck";
  const Mechanism rp = make_random_priority(3);
  if (lrobic_search(rp, center, R(1, 20), 100, 1)) return "random priority found violating";
  if (lrobic_search(rp, center, R(1, 20), 10, 1, targeted)) return "random priority found violating";
  return "";
}

std::string equivalence() {
  const std::vector<Axiom> four{Axiom::kStrategyProofness, Axiom::kElementaryMonotonicity,
                                Axiom::kUpperInvariance, Axiom::kLowerInvariance};
  std::vector<Mechanism> sp{make_random_priority(3)};
  std::vector<AgentIndex> order{0, 1, 2};
  do sp.push_back(make_serial_dictatorship(PriorityOrder(order)));
  while (std::next_permutation(order.begin(), order.end()));
  for (const auto& m : sp) {
    for (const auto& o : check_swap_axioms(m, four, exhaustive())) {
      if (!o.satisfied()) return m.descriptor() + " fails " + std::string(axiom_name(o.axiom));
    }
  }
  const auto ps = check_swap_axioms(make_probabilistic_serial(3), four, exhaustive());
  const bool exact = !ps[0].satisfied() && ps[1].satisfied() && ps[2].satisfied() && !ps[3].satisfied();
  return expect(exact, "probabilistic serial fails a different set");
}

std::string efficiency_oracles() {
  const ProfileSpace space(3);
  for (std::uint64_t k = 0; k < space.count(); ++k) {
    const Profile p = space.profile(k);
    for (const Assignment& l : {probabilistic_serial(p), random_priority(p)}) {
      if (check_ordinal_efficiency(l, p).efficient != (lp_dominance(l, p).optimum == 0)) {
        return "disagreement at profile " + std::to_string(k);
      }
    }
  }
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + trial % 3;
    const Assignment l = validate_assignment(oracle::random_bistochastic(gen, n, 1 + trial % 6));
    std::vector<Preference> prefs;
    for (int i = 0; i < n; ++i) prefs.emplace_back(oracle::random_ranking(gen, n));
    const Profile p(prefs);
    if (check_ordinal_efficiency(l, p).efficient != (lp_dominance(l, p).optimum == 0)) {
      return "disagreement on random matrix " + std::to_string(trial);
    }
  }
  const Profile four = profile({"abcd", "abcd", "badc", "badc"});
  const Assignment rp = random_priority(four);
  const Assignment ps = probabilistic_serial(four);
  if (check_ordinal_efficiency(rp, four).efficient || lp_dominance(rp, four).optimum == 0) {
    return "random priority not declared inefficient";
  }
  if (!check_ordinal_efficiency(ps, four).efficient || lp_dominance(ps, four).optimum != 0) {
    return "probabilistic serial not declared efficient";
  }
  return "";
}

std::string round_trips() {
  const auto ok = [](const Assignment& l) {
    const Decomposition d = birkhoff_decompose(l);
    const int n = l.size();
    return recombine(d) == l && static_cast<int>(d.size()) <= (n - 1) * (n - 1) + 1;
  };
  const ProfileSpace space(3);
  for (std::uint64_t k = 0; k < space.count(); ++k) {
    if (!ok(probabilistic_serial(space.profile(k)))) return "failed at profile " + std::to_string(k);
  }
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + trial % 3;
    if (!ok(validate_assignment(oracle::random_bistochastic(gen, n, 1 + trial % 9)))) {
      return "failed on random matrix " + std::to_string(trial);
    }
  }
  return "";
}

std::string scale() {
  const auto out = check_swap_axioms(make_probabilistic_serial(4),
                                     {Axiom::kElementaryMonotonicity, Axiom::kUpperInvariance}, exhaustive());
  for (const auto& o : out) {
    if (!o.satisfied()) return std::string(axiom_name(o.axiom)) + " violated";
    if (o.stats.profiles_checked != 4 * 331'776ULL) return "profile count " + std::to_string(o.stats.profiles_checked);
  }
  return "";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "manipulation example reproduced exactly", 1, table_one},
      {2, "exhaustive n=3 sweep of probabilistic serial", 30, ps_sweep},
      {3, "uniform-prior obic certificate and rank flags", 60, uniform_certificate},
      {4, "obic iff interim em, ui and li", 0, decomposition},
      {5, "lrobic falsification", 0, falsification},
      {6, "strategy-proofness equals em + ui + li", 0, equivalence},
      {7, "tau acyclicity agrees with the lp", 300, efficiency_oracles},
      {8, "decomposition round trips", 0, round_trips},
      {9, "n=4 em and ui sweep of probabilistic serial", 600, scale},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string reason;
    try {
      reason = c.body();
    } catch (const std::exception& e) {
      reason = std::string("exception: ") + e.what();
    }
    const double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (reason.empty() && c.seconds > 0 && took >= c.seconds) {
      reason = "took " + std::to_string(took) + " s, limit " + std::to_string(c.seconds) + " s";
    }
    std::printf("%s criterion %d: %s (%.2f s)%s%s\n", reason.empty() ? "PASS" : "FAIL", c.number,
                c.title.c_str(), took, reason.empty() ? "" : ": ", reason.c_str());
    std::fflush(stdout);
    failed += reason.empty() ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
