#include <doctest.h>

#include <random>
#include <set>
#include <tuple>

#include "helpers.hpp"
#include "oracles.hpp"
#include "ram/interim.hpp"

using namespace ram;
using testing::P;
using testing::profile;
using testing::R;

namespace {

std::vector<Rational> as_vector(const Prior& p) { return {p.probabilities().begin(), p.probabilities().end()}; }

Prior random_prior(std::mt19937_64& gen, int n) {
  const std::size_t m = factorial(n);
  std::vector<Rational> w(m);
  Rational total;
  for (auto& x : w) {
    x = Rational(static_cast<long>(gen() % 20));
    total += x;
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  for (auto& x : w) x /= total;
  return Prior(n, w);
}

Prior point_mass(int n, std::size_t index) {
  std::vector<Rational> w(factorial(n));
  w[index] = 1;
  return Prior(n, w);
}

EatingSpeedSchedule front_loaded() {
  std::vector<std::vector<SpeedPiece>> pieces(3, {SpeedPiece{R(0), R(1), R(1)}});
  pieces[0] = {SpeedPiece{R(0), R(1, 2), R(2)}, SpeedPiece{R(1, 2), R(1), R(0)}};
  return EatingSpeedSchedule(pieces);
}

EatingSpeedSchedule back_loaded() {
  std::vector<std::vector<SpeedPiece>> pieces(3, {SpeedPiece{R(0), R(1), R(1)}});
  pieces[1] = {SpeedPiece{R(0), R(1, 2), R(1, 2)}, SpeedPiece{R(1, 2), R(1), R(3, 2)}};
  pieces[2] = {SpeedPiece{R(0), R(1, 3), R(0)}, SpeedPiece{R(1, 3), R(1), R(3, 2)}};
  return EatingSpeedSchedule(pieces);
}

oracle::Matrix eat_front(const std::vector<oracle::Ranking>& prefs) {
  oracle::Pieces pieces(3, {{R(0), R(1), R(1)}});
  pieces[0] = {{R(0), R(1, 2), R(2)}, {R(1, 2), R(1), R(0)}};
  return oracle::eat_with_speeds(prefs, pieces);
}

}  // namespace

TEST_CASE("uniform priors") {
  CHECK(as_vector(uniform_prior(2)) == std::vector<Rational>{R(1, 2), R(1, 2)});
  CHECK(as_vector(uniform_prior(3)) == std::vector<Rational>(6, R(1, 6)));
  CHECK(as_vector(uniform_prior(4)) == std::vector<Rational>(24, R(1, 24)));
  CHECK_THROWS_AS(uniform_prior(7), ResourceError);
  CHECK(uniform_prior(3).probability(P("cab")) == R(1, 6));
}

TEST_CASE("prior validation") {
  CHECK_THROWS_AS(Prior(2, {R(1, 2)}), InputError);
  CHECK_THROWS_AS(Prior(2, {R(1, 2), R(1, 3)}), InputError);
  CHECK_THROWS_AS(Prior(2, {R(3, 2), R(-1, 2)}), InputError);
  CHECK_NOTHROW(Prior(2, {R(1), R(0)}));
}

TEST_CASE("interim shares at n = 2") {
  const auto q = interim_share_vector(make_probabilistic_serial(2), 0, P("ab"), uniform_prior(2));
  CHECK(q.shares == std::vector<Rational>{R(3, 4), R(1, 4)});
  const auto r = rank_vector_report(make_probabilistic_serial(2), uniform_prior(2), 0);
  for (const auto& v : r.rank_vectors) CHECK(v == std::vector<Rational>{R(3, 4), R(1, 4)});
  CHECK(r.rank_invariant);
  CHECK(r.rank_monotone);
}

TEST_CASE("interim shares match the naive sum") {
  std::mt19937_64 gen(23);
  const Mechanism ps = make_probabilistic_serial(3);
  const Mechanism rp = make_random_priority(3);
  for (int trial = 0; trial < 4; ++trial) {
    const Prior prior = trial == 0 ? uniform_prior(3) : random_prior(gen, 3);
    const InterimTable ps_table = compute_interim_table(ps, prior);
    const InterimTable rp_table = compute_interim_table(rp, prior);
    for (AgentIndex i = 0; i < 3; ++i) {
      for (std::size_t k = 0; k < ps_table.reports().size(); ++k) {
        const Preference& report = ps_table.reports()[k];
        const oracle::Ranking r(report.ranking().begin(), report.ranking().end());
        const auto expected_ps =
            oracle::interim([](const auto& p) { return oracle::eat(p); }, 3, i, r, as_vector(prior));
        const auto expected_rp = oracle::interim([](const auto& p) { return oracle::random_priority(p); }, 3,
                                                 i, r, as_vector(prior));
        CHECK(ps_table.shares(i, k) == expected_ps);
        CHECK(rp_table.shares(i, k) == expected_rp);
        CHECK(sum(ps_table.shares(i, k)) == 1);
        CHECK(interim_share_vector(ps, i, report, prior).shares == expected_ps);
      }
    }
  }
}

TEST_CASE("a point-mass prior reduces to the ex-post row") {
  const Mechanism ps = make_probabilistic_serial(3);
  const auto prefs = enumerate_preferences(3);
  for (std::size_t star = 0; star < prefs.size(); ++star) {
    const Prior prior = point_mass(3, star);
    std::set<std::tuple<int, Preference, Preference>> expected;
    for (AgentIndex i = 0; i < 3; ++i) {
      for (const auto& r : prefs) {
        const Profile truth = Profile(std::vector<Preference>(3, prefs[star])).with(i, r);
        CHECK(interim_share_vector(ps, i, r, prior).shares == ps(truth).rows()[i]);
        for (const auto& d : prefs) {
          if (d == r) continue;
          if (!fosd(ps(truth).row(i), ps(truth.with(i, d)).row(i), r)) expected.insert({i, r, d});
        }
      }
    }
    std::set<std::tuple<int, Preference, Preference>> got;
    for (const auto& v : check_obic(ps, prior).violations) got.insert({v.agent, *v.truthful, *v.deviation});
    CHECK(got == expected);
  }
}

TEST_CASE("obic at the uniform prior") {
  for (const Mechanism& m : {make_probabilistic_serial(3), make_random_priority(3)}) {
    CAPTURE(m.descriptor());
    const auto d = obic_decomposition_report(m, uniform_prior(3));
    CHECK(d.obic.satisfied());
    CHECK(d.elementary_monotonicity.satisfied());
    CHECK(d.upper_invariance.satisfied());
    CHECK(d.lower_invariance.satisfied());
  }
}

TEST_CASE("neutral monotone mechanisms are obic at the uniform prior") {
  SweepOptions all;
  all.mode = SweepMode::kExhaustive;
  const std::vector<Mechanism> mechanisms{make_probabilistic_serial(3), make_random_priority(3),
                                          make_simultaneous_eating(front_loaded()),
                                          make_simultaneous_eating(back_loaded())};
  int certified = 0;
  for (const auto& m : mechanisms) {
    CAPTURE(m.descriptor());
    if (!check_neutrality(m, all).satisfied() || !check_elementary_monotonicity(m, all).satisfied()) continue;
    ++certified;
    CHECK(check_obic(m, uniform_prior(3)).satisfied());
    const auto r = rank_vector_report(m, uniform_prior(3), 0);
    CHECK(r.rank_invariant);
    CHECK(r.rank_monotone);
  }
  CHECK(certified == 4);
}

TEST_CASE("non-uniform speeds against the naive eater") {
  const Mechanism sea = make_simultaneous_eating(front_loaded());
  const Prior prior = uniform_prior(3);
  for (const auto& report : enumerate_preferences(3)) {
    const oracle::Ranking r(report.ranking().begin(), report.ranking().end());
    CHECK(interim_share_vector(sea, 0, report, prior).shares ==
          oracle::interim(eat_front, 3, 0, r, as_vector(prior)));
  }
}

TEST_CASE("rank vectors of probabilistic serial at n = 3") {
  const auto r = rank_vector_report(make_probabilistic_serial(3), uniform_prior(3), 1);
  CHECK(r.rank_invariant);
  CHECK(r.rank_monotone);
  REQUIRE(r.reports.size() == 6);
  const auto naive = oracle::interim([](const auto& p) { return oracle::eat(p); }, 3, 1, {0, 1, 2},
                                     as_vector(uniform_prior(3)));
  for (const auto& v : r.rank_vectors) {
    CHECK(v == naive);
    CHECK(sum(v) == 1);
  }
  CHECK(naive == std::vector<Rational>{R(71, 108), R(17, 72), R(23, 216)});
}

TEST_CASE("strategy-proof mechanisms are obic at every prior") {
  std::mt19937_64 gen(3);
  const Mechanism rp = make_random_priority(3);
  const Mechanism sd = make_serial_dictatorship(PriorityOrder({1, 2, 0}));
  for (int trial = 0; trial < 5; ++trial) {
    const Prior prior = random_prior(gen, 3);
    for (const Mechanism& m : {rp, sd}) {
      const auto d = obic_decomposition_report(m, prior);
      CHECK(d.obic.satisfied());
      CHECK(d.elementary_monotonicity.satisfied());
      CHECK(d.upper_invariance.satisfied());
      CHECK(d.lower_invariance.satisfied());
    }
  }
}

TEST_CASE("sampler") {
  const Prior center = uniform_prior(3);
  const auto a = sample_prior_in_ball(center, R(1, 20), 42);
  const auto b = sample_prior_in_ball(center, R(1, 20), 42);
  CHECK(a.sample == b.sample);
  CHECK(a.attempts == b.attempts);
  CHECK_FALSE(sample_prior_in_ball(center, R(1, 20), 43).sample == a.sample);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = sample_prior_in_ball(center, R(1, 20), seed);
    CHECK(sum(s.sample.probabilities()) == 1);
    for (const auto& x : s.sample.probabilities()) {
      CHECK(x > R(1, 6) - R(1, 20));
      CHECK(x < R(1, 6) + R(1, 20));
      CHECK((x * Rational(1'000'000)).is_integer());
    }
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = sample_prior_in_ball(uniform_prior(2), R(1), seed);
    CHECK(sum(s.sample.probabilities()) == 1);
    for (const auto& x : s.sample.probabilities()) CHECK(x >= 0);
  }
  CHECK(derive_sample_seed(1, 0) != derive_sample_seed(1, 1));
  CHECK(derive_sample_seed(1, 5) == derive_sample_seed(1, 5));
  CHECK_THROWS_AS(sample_prior_in_ball(center, R(1, 10'000'000), 1), SamplingExhausted);
  CHECK_THROWS_AS(sample_prior_in_ball(center, R(0), 1), InputError);
}

TEST_CASE("lrobic search") {
  const Mechanism ps = make_probabilistic_serial(3);
  const Prior center = uniform_prior(3);
  const auto found = lrobic_search(ps, center, R(1, 20), 100, 1);
  REQUIRE(found);
  const Prior& at = found->prior.sample;
  CHECK(found->prior.seed == derive_sample_seed(1, found->sample_index));
  CHECK(sample_prior_in_ball(center, R(1, 20), found->prior.seed).sample == at);
  CHECK(replay_interim(found->witness, ps, at));
  CHECK_FALSE(rank_vector_report(ps, at, found->witness.agent).rank_invariant);

  const auto d = obic_decomposition_report(ps, at);
  CHECK_FALSE(d.obic.satisfied());
  CHECK((!d.elementary_monotonicity.satisfied() || !d.upper_invariance.satisfied() ||
         !d.lower_invariance.satisfied()));
  for (const auto& v : d.obic.violations) CHECK(replay_interim(v, ps, at));
  for (const auto& v : d.lower_invariance.violations) CHECK(replay_interim(v, ps, at));

  LrobicOptions targeted;
  targeted.targeted = true;
  CHECK_FALSE(invariance_target(ps).empty());
  const auto t = lrobic_search(ps, center, R(1, 20), 100, 1, targeted);
  REQUIRE(t);
  CHECK(replay_interim(t->witness, ps, t->prior.sample));

  const Mechanism rp = make_random_priority(3);
  CHECK(invariance_target(rp).empty());
  CHECK_FALSE(lrobic_search(rp, center, R(1, 20), 20, 7));
  CHECK_FALSE(lrobic_search(rp, center, R(1, 20), 10, 7, targeted));
  CHECK_THROWS_AS(lrobic_search(ps, center, R(1, 20), 0, 1), InputError);
}

TEST_CASE("ex-post invariance across swaps") {
  SweepOptions all;
  all.mode = SweepMode::kExhaustive;
  const Mechanism rp = make_random_priority(3);
  CHECK(check_upper_invariance(rp, all).satisfied());
  CHECK(check_lower_invariance(rp, all).satisfied());
  const auto li = check_lower_invariance(make_probabilistic_serial(3), all);
  bool manipulation = false;
  for (const auto& v : li.violations) {
    if (v.agent == 0 && *v.profile == profile({"cab", "abc", "cab"}) && *v.deviation == P("acb")) {
      manipulation = true;
    }
  }
  CHECK(manipulation);
}

TEST_CASE("interim checks on a table") {
  const InterimTable table = compute_interim_table(make_probabilistic_serial(3), uniform_prior(3));
  CHECK(table.n() == 3);
  CHECK(table.reports() == enumerate_preferences(3));
  CHECK(check_obic(table).satisfied());
  CHECK(check_interim_elementary_monotonicity(table).satisfied());
  CHECK(check_interim_upper_invariance(table).satisfied());
  CHECK(check_interim_lower_invariance(table).satisfied());
  SweepOptions one;
  one.threads = 1;
  SweepOptions four;
  four.threads = 4;
  const Prior prior = sample_prior_in_ball(uniform_prior(3), R(1, 20), 9).sample;
  const InterimTable x = compute_interim_table(make_probabilistic_serial(3), prior, one);
  const InterimTable y = compute_interim_table(make_probabilistic_serial(3), prior, four);
  for (AgentIndex i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < 6; ++k) CHECK(x.shares(i, k) == y.shares(i, k));
  }
}
