#include "ram/mechanisms.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace ram {

// ---------------------------------------------------------------------------
// Mechanism

Mechanism::Mechanism(int n, std::string descriptor, Evaluator evaluator)
    : n_(n), descriptor_(std::move(descriptor)), evaluator_(std::move(evaluator)) {
  if (n_ < 1) throw InputError("a mechanism needs at least one agent");
  if (!evaluator_) throw InputError("mechanism without evaluator");
}

Assignment Mechanism::evaluate(const Profile& profile) const {
  if (profile.size() != n_) {
    throw InputError("mechanism '" + descriptor_ + "' expects " + std::to_string(n_) +
                     " agents, got " + std::to_string(profile.size()));
  }
  return evaluator_(profile);
}

namespace {

struct ProfileCache {
  std::mutex mutex;
  std::unordered_map<std::uint64_t, Assignment> entries;
};

}  // namespace

Mechanism Mechanism::cached() const {
  auto cache = std::make_shared<ProfileCache>();
  Evaluator inner = evaluator_;
  return Mechanism(n_, descriptor_, [cache, inner](const Profile& profile) {
    const std::uint64_t key = profile_index(profile);
    {
      std::lock_guard lock(cache->mutex);
      if (auto it = cache->entries.find(key); it != cache->entries.end()) return it->second;
    }
    Assignment result = inner(profile);
    std::lock_guard lock(cache->mutex);
    // Another thread may have raced us; the first stored value wins and is identical.
    return cache->entries.try_emplace(key, std::move(result)).first->second;
  });
}

// ---------------------------------------------------------------------------
// Priority orders and serial dictatorship

PriorityOrder::PriorityOrder(std::vector<AgentIndex> agents) : agents_(std::move(agents)) {
  std::vector<bool> seen(agents_.size(), false);
  for (AgentIndex i : agents_) {
    if (i < 0 || i >= size() || seen[i]) throw InputError("priority order is not a permutation");
    seen[i] = true;
  }
  if (agents_.empty()) throw InputError("empty priority order");
}

PriorityOrder PriorityOrder::identity(int n) {
  std::vector<AgentIndex> agents(n);
  std::iota(agents.begin(), agents.end(), 0);
  return PriorityOrder(std::move(agents));
}

namespace {

// Writes the deterministic serial-dictatorship outcome into `owner` (object -> agent).
void pick_in_order(const Profile& profile, std::span<const AgentIndex> order,
                   std::vector<AgentIndex>& owner) {
  const int n = profile.size();
  owner.assign(n, -1);
  for (AgentIndex i : order) {
    for (ObjectIndex a : profile[i].ranking()) {
      if (owner[a] == -1) {
        owner[a] = i;
        break;
      }
    }
  }
}

}  // namespace

Assignment serial_dictatorship(const Profile& profile, const PriorityOrder& order) {
  const int n = profile.size();
  if (order.size() != n) throw InputError("priority order size does not match profile");
  std::vector<AgentIndex> owner;
  pick_in_order(profile, order.agents(), owner);
  std::vector<Rational> m(static_cast<std::size_t>(n) * n);
  for (ObjectIndex a = 0; a < n; ++a) m[static_cast<std::size_t>(owner[a]) * n + a] = 1;
  return validate_assignment(n, std::move(m));
}

Assignment random_priority(const Profile& profile, const EnumerationLimits& limits) {
  const int n = profile.size();
  if (n > limits.max_preference_n) {
    throw ResourceError("random priority enumerates n! orders: n = " + std::to_string(n) +
                        " > max_preference_n = " + std::to_string(limits.max_preference_n));
  }
  std::vector<AgentIndex> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Integer counts first, a single division at the end.
  std::vector<long> counts(static_cast<std::size_t>(n) * n, 0);
  std::vector<AgentIndex> owner;
  do {
    pick_in_order(profile, order, owner);
    for (ObjectIndex a = 0; a < n; ++a) ++counts[static_cast<std::size_t>(owner[a]) * n + a];
  } while (std::next_permutation(order.begin(), order.end()));
  const auto orders = static_cast<long>(factorial(n));
  std::vector<Rational> m;
  m.reserve(counts.size());
  for (long c : counts) m.emplace_back(c, orders);
  return validate_assignment(n, std::move(m));
}

// ---------------------------------------------------------------------------
// Eating speed schedules

EatingSpeedSchedule::EatingSpeedSchedule(std::vector<std::vector<SpeedPiece>> per_agent)
    : pieces_(std::move(per_agent)) {
  if (pieces_.empty()) throw InputError("speed schedule without agents");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& pieces = pieces_[i];
    const std::string who = "agent " + std::to_string(i + 1);
    if (pieces.empty()) throw InputError(who + ": no speed pieces");
    if (pieces.front().start != 0) throw InputError(who + ": schedule must start at 0");
    if (pieces.back().end != 1) throw InputError(who + ": schedule must end at 1");
    Rational integral;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      const auto& p = pieces[k];
      if (!(p.start < p.end)) throw InputError(who + ": empty or reversed speed interval");
      if (k > 0 && pieces[k - 1].end != p.start) {
        throw InputError(who + ": speed intervals must be contiguous");
      }
      if (p.speed < 0) throw InputError(who + ": negative eating speed");
      integral += p.speed * (p.end - p.start);
    }
    if (integral != 1) {
      throw InputError(who + ": speed integrates to " + integral.str() + ", not 1");
    }
  }
}

EatingSpeedSchedule EatingSpeedSchedule::unit(int n) {
  return EatingSpeedSchedule(
      std::vector<std::vector<SpeedPiece>>(n, {SpeedPiece{Rational(0), Rational(1), Rational(1)}}));
}

const Rational& EatingSpeedSchedule::speed_at(AgentIndex i, const Rational& t) const {
  const auto& pieces = pieces_.at(i);
  for (const auto& p : pieces) {
    if (t < p.end) return p.speed;
  }
  return pieces.back().speed;
}

Rational EatingSpeedSchedule::next_breakpoint_after(const Rational& t) const {
  Rational best(1);
  for (const auto& pieces : pieces_) {
    for (const auto& p : pieces) {
      if (p.end > t) {
        if (p.end < best) best = p.end;
        break;
      }
    }
  }
  return best;
}

Rational EatingSpeedSchedule::consumed_by(AgentIndex i, const Rational& t) const {
  Rational total;
  for (const auto& p : pieces_.at(i)) {
    if (t <= p.start) break;
    const Rational& stop = t < p.end ? t : p.end;
    total += p.speed * (stop - p.start);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Simultaneous eating

Assignment simultaneous_eating(const Profile& profile, const EatingSpeedSchedule& speeds,
                               std::vector<EatingEvent>* trace) {
  const int n = profile.size();
  if (speeds.agents() != n) throw InputError("speed schedule size does not match profile");

  std::vector<Rational> supply(n, Rational(1));
  std::vector<bool> exhausted(n, false);
  std::vector<Rational> share(static_cast<std::size_t>(n) * n);
  std::vector<Rational> consumed(n);
  std::vector<int> cursor(n, 0);  // rank of the object each agent is eating
  std::vector<Rational> rate(n);
  std::vector<Rational> speed(n);
  Rational t;
  int remaining = n;

  while (remaining > 0 && t < 1) {
    for (AgentIndex i = 0; i < n; ++i) {
      while (exhausted[profile[i].ranking()[cursor[i]]]) ++cursor[i];
    }
    for (auto& r : rate) r = 0;
    for (AgentIndex i = 0; i < n; ++i) {
      speed[i] = speeds.speed_at(i, t);
      rate[profile[i].ranking()[cursor[i]]] += speed[i];
    }
    Rational dt = speeds.next_breakpoint_after(t) - t;
    for (ObjectIndex a = 0; a < n; ++a) {
      if (exhausted[a] || rate[a].is_zero()) continue;
      Rational until_empty = supply[a] / rate[a];
      if (until_empty < dt) dt = std::move(until_empty);
    }
    for (AgentIndex i = 0; i < n; ++i) {
      if (speed[i].is_zero()) continue;
      const ObjectIndex a = profile[i].ranking()[cursor[i]];
      const Rational eaten = speed[i] * dt;
      share[static_cast<std::size_t>(i) * n + a] += eaten;
      consumed[i] += eaten;
    }
    for (ObjectIndex a = 0; a < n; ++a) {
      if (exhausted[a] || rate[a].is_zero()) continue;
      supply[a] -= rate[a] * dt;
      if (supply[a] < 0) throw InternalError("eating simulation overdrew an object");
      if (supply[a].is_zero()) {
        exhausted[a] = true;
        --remaining;
      }
    }
    t += dt;
    if (trace != nullptr) trace->push_back(EatingEvent{t, supply, consumed});
  }

  if (remaining != 0) throw InternalError("eating simulation ended with unconsumed supply");
  return validate_assignment(n, std::move(share));
}

Assignment probabilistic_serial(const Profile& profile) {
  return simultaneous_eating(profile, EatingSpeedSchedule::unit(profile.size()));
}

// ---------------------------------------------------------------------------
// Mechanism factories

Mechanism make_serial_dictatorship(const PriorityOrder& order) {
  std::string name = "sd:";
  for (int k = 0; k < order.size(); ++k) {
    if (k > 0) name += ',';
    name += std::to_string(order.agents()[k] + 1);
  }
  return Mechanism(order.size(), name,
                   [order](const Profile& p) { return serial_dictatorship(p, order); });
}

Mechanism make_random_priority(int n, const EnumerationLimits& limits) {
  if (n > limits.max_preference_n) {
    throw ResourceError("random priority enumerates n! orders: n = " + std::to_string(n) +
                        " > max_preference_n = " + std::to_string(limits.max_preference_n));
  }
  return Mechanism(n, "rp", [limits](const Profile& p) { return random_priority(p, limits); });
}

Mechanism make_simultaneous_eating(const EatingSpeedSchedule& speeds) {
  return Mechanism(speeds.agents(), "sea",
                   [speeds](const Profile& p) { return simultaneous_eating(p, speeds); });
}

Mechanism make_probabilistic_serial(int n) {
  return Mechanism(n, "ps", [](const Profile& p) { return probabilistic_serial(p); });
}

namespace {

Mechanism table_lookup(const Instance& instance, std::vector<Assignment> by_index) {
  auto table = std::make_shared<const std::vector<Assignment>>(std::move(by_index));
  return Mechanism(instance.size(), "table", [table](const Profile& p) {
    return table->at(profile_index(p));
  });
}

template <typename Map, typename Convert>
Mechanism build_table(const Instance& instance, const Map& table, const EnumerationLimits& limits,
                      Convert convert) {
  const ProfileSpace space(instance.size(), limits);
  std::vector<Assignment> by_index;
  by_index.reserve(space.count());
  for (std::uint64_t k = 0; k < space.count(); ++k) {
    const Profile profile = space.profile(k);
    const auto it = table.find(profile);
    if (it == table.end()) {
      throw InputError("mechanism table is missing profile " + to_string(instance, profile));
    }
    try {
      by_index.push_back(convert(it->second));
    } catch (const InputError& e) {
      throw InputError("invalid assignment at profile " + to_string(instance, profile) + ": " +
                       e.what());
    }
  }
  if (table.size() != space.count()) {
    throw InputError("mechanism table has entries outside the profile domain");
  }
  return table_lookup(instance, std::move(by_index));
}

}  // namespace

Mechanism tabulated_mechanism(const Instance& instance,
                              const std::map<Profile, std::vector<std::vector<Rational>>>& table,
                              const EnumerationLimits& limits) {
  return build_table(instance, table, limits, [](const std::vector<std::vector<Rational>>& m) {
    return validate_assignment(m);
  });
}

Mechanism tabulated_mechanism(const Instance& instance, const std::map<Profile, Assignment>& table,
                              const EnumerationLimits& limits) {
  return build_table(instance, table, limits, [n = instance.size()](const Assignment& a) {
    if (a.size() != n) throw InputError("assignment size does not match instance");
    return a;
  });
}

}  // namespace ram
