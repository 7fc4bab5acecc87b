// Naive reference implementations used only by the tests. They share nothing
// with the library beyond the value types, and favour obviousness over speed.
#ifndef RAM_TESTS_ORACLES_HPP_
#define RAM_TESTS_ORACLES_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "ram/core.hpp"

namespace oracle {

using ram::Rational;
using Matrix = std::vector<std::vector<Rational>>;
using Ranking = std::vector<int>;  // best first

inline std::vector<Ranking> all_rankings(int n) {
  Ranking r(n);
  std::iota(r.begin(), r.end(), 0);
  std::vector<Ranking> out;
  do out.push_back(r);
  while (std::next_permutation(r.begin(), r.end()));
  return out;
}

inline Matrix zeros(int n) { return Matrix(n, std::vector<Rational>(n)); }

// Eating algorithm run round by round: in each round everybody eats their best
// object with supply left, until the first of those objects runs out.
inline Matrix eat(const std::vector<Ranking>& prefs) {
  const int n = static_cast<int>(prefs.size());
  Matrix shares = zeros(n);
  std::vector<Rational> supply(n, Rational(1));
  Rational clock(0);
  while (clock < 1) {
    std::vector<int> target(n);
    std::vector<int> eaters(n, 0);
    for (int i = 0; i < n; ++i) {
      int k = 0;
      while (supply[prefs[i][k]] == 0) ++k;
      target[i] = prefs[i][k];
      ++eaters[target[i]];
    }
    Rational step = Rational(1) - clock;
    for (int a = 0; a < n; ++a) {
      if (eaters[a] > 0) step = std::min(step, supply[a] / Rational(eaters[a]));
    }
    for (int i = 0; i < n; ++i) {
      shares[i][target[i]] += step;
      supply[target[i]] -= step;
    }
    clock += step;
  }
  return shares;
}

// Piecewise-constant speeds: per agent, (start, end, speed) pieces covering [0,1).
using Pieces = std::vector<std::vector<std::array<Rational, 3>>>;

inline Rational speed_at(const Pieces& pieces, int i, const Rational& t) {
  for (const auto& p : pieces[i]) {
    if (p[0] <= t && t < p[1]) return p[2];
  }
  return Rational(0);
}

// Same rounds as eat(), but a round also ends at the next speed breakpoint.
inline Matrix eat_with_speeds(const std::vector<Ranking>& prefs, const Pieces& pieces) {
  const int n = static_cast<int>(prefs.size());
  Matrix shares = zeros(n);
  std::vector<Rational> supply(n, Rational(1));
  Rational clock(0);
  while (clock < 1) {
    Rational horizon(1);
    for (const auto& agent : pieces) {
      for (const auto& p : agent) {
        if (p[1] > clock && p[1] < horizon) horizon = p[1];
      }
    }
    std::vector<int> target(n, -1);
    std::vector<Rational> rate(n);
    for (int i = 0; i < n; ++i) {
      for (int a : prefs[i]) {
        if (supply[a] > 0) {
          target[i] = a;
          break;
        }
      }
      if (target[i] >= 0) rate[target[i]] += speed_at(pieces, i, clock);
    }
    Rational step = horizon - clock;
    for (int a = 0; a < n; ++a) {
      if (rate[a] > 0) step = std::min(step, supply[a] / rate[a]);
    }
    for (int i = 0; i < n; ++i) {
      if (target[i] < 0) continue;
      const Rational eaten = speed_at(pieces, i, clock) * step;
      shares[i][target[i]] += eaten;
      supply[target[i]] -= eaten;
    }
    clock += step;
  }
  return shares;
}

// Agents pick in `order`, each taking their favourite remaining object.
inline Matrix dictatorship(const std::vector<Ranking>& prefs, const std::vector<int>& order) {
  const int n = static_cast<int>(prefs.size());
  Matrix out = zeros(n);
  std::vector<bool> taken(n, false);
  for (int i : order) {
    for (int a : prefs[i]) {
      if (!taken[a]) {
        taken[a] = true;
        out[i][a] = 1;
        break;
      }
    }
  }
  return out;
}

inline Matrix random_priority(const std::vector<Ranking>& prefs) {
  const int n = static_cast<int>(prefs.size());
  Matrix out = zeros(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  long orders = 0;
  do {
    const Matrix d = dictatorship(prefs, order);
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < n; ++a) out[i][a] += d[i][a];
    }
    ++orders;
  } while (std::next_permutation(order.begin(), order.end()));
  for (auto& row : out) {
    for (auto& x : row) x /= Rational(orders);
  }
  return out;
}

// Does `x` first-order stochastically dominate `y` for someone with ranking r?
inline bool dominates(const std::vector<Rational>& x, const std::vector<Rational>& y,
                      const Ranking& r) {
  Rational sx;
  Rational sy;
  for (int a : r) {
    sx += x[a];
    sy += y[a];
    if (sx < sy) return false;
  }
  return true;
}

inline std::vector<Ranking> to_rankings(const ram::Profile& p) {
  std::vector<Ranking> out;
  for (const auto& pref : p.preferences()) out.emplace_back(pref.ranking().begin(), pref.ranking().end());
  return out;
}

inline Matrix to_matrix(const ram::Assignment& a) { return a.rows(); }

// All (n!)^n profiles, agent 0 slowest.
template <class F>
void for_each_profile(int n, F&& f) {
  const auto rankings = all_rankings(n);
  const std::size_t m = rankings.size();
  std::vector<std::size_t> digit(n, 0);
  std::vector<Ranking> prefs(n, rankings[0]);
  while (true) {
    for (int i = 0; i < n; ++i) prefs[i] = rankings[digit[i]];
    f(prefs);
    int pos = n - 1;
    while (pos >= 0 && ++digit[pos] == m) digit[pos--] = 0;
    if (pos < 0) break;
  }
}

// Interim shares of agent i reporting `report`; opponents drawn from `prior`
// (indexed like all_rankings).
template <class Mech>
std::vector<Rational> interim(const Mech& mech, int n, int agent, const Ranking& report,
                              const std::vector<Rational>& prior) {
  const auto rankings = all_rankings(n);
  std::vector<Rational> out(n);
  for_each_profile(n, [&](std::vector<Ranking> prefs) {
    if (prefs[agent] != rankings.front()) return;  // visit each opponent profile once
    Rational w(1);
    for (int j = 0; j < n; ++j) {
      if (j == agent) continue;
      const auto k = std::find(rankings.begin(), rankings.end(), prefs[j]) - rankings.begin();
      w *= prior[k];
    }
    prefs[agent] = report;
    const Matrix q = mech(prefs);
    for (int a = 0; a < n; ++a) out[a] += w * q[agent][a];
  });
  return out;
}

// Uniform rational in [0,1] with denominator `den`.
inline Rational random_fraction(std::mt19937_64& gen, long den) {
  return Rational(static_cast<long>(gen() % (den + 1)), den);
}

// Random bistochastic matrix: a convex combination of up to `terms` random
// permutation matrices with random positive rational weights.
inline Matrix random_bistochastic(std::mt19937_64& gen, int n, int terms) {
  std::vector<Rational> weights;
  Rational total;
  for (int t = 0; t < terms; ++t) {
    weights.push_back(Rational(static_cast<long>(1 + gen() % 12)));
    total += weights.back();
  }
  Matrix out = zeros(n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (const auto& w : weights) {
    std::shuffle(perm.begin(), perm.end(), gen);
    for (int i = 0; i < n; ++i) out[i][perm[i]] += w / total;
  }
  return out;
}

inline Ranking random_ranking(std::mt19937_64& gen, int n) {
  Ranking r(n);
  std::iota(r.begin(), r.end(), 0);
  std::shuffle(r.begin(), r.end(), gen);
  return r;
}

}  // namespace oracle

#endif  // RAM_TESTS_ORACLES_HPP_
