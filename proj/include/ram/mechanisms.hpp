#ifndef RAM_MECHANISMS_HPP_
#define RAM_MECHANISMS_HPP_

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ram/core.hpp"

namespace ram {

// A deterministic map from profiles to assignments.
class Mechanism {
 public:
  using Evaluator = std::function<Assignment(const Profile&)>;

  Mechanism(int n, std::string descriptor, Evaluator evaluator);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] const std::string& descriptor() const { return descriptor_; }
  [[nodiscard]] Assignment evaluate(const Profile& profile) const;
  Assignment operator()(const Profile& profile) const { return evaluate(profile); }

  // Same mechanism, memoized by profile index. Thread-safe; results are
  // identical to the uncached evaluator.
  [[nodiscard]] Mechanism cached() const;

 private:
  int n_;
  std::string descriptor_;
  Evaluator evaluator_;
};

class PriorityOrder {
 public:
  explicit PriorityOrder(std::vector<AgentIndex> agents);
  static PriorityOrder identity(int n);

  [[nodiscard]] int size() const { return static_cast<int>(agents_.size()); }
  [[nodiscard]] std::span<const AgentIndex> agents() const { return agents_; }

 private:
  std::vector<AgentIndex> agents_;
};

// Constant eating speed on the half-open time interval [start, end).
struct SpeedPiece {
  Rational start;
  Rational end;
  Rational speed;
  friend bool operator==(const SpeedPiece&, const SpeedPiece&) = default;
};

// Piecewise-constant eating speeds on [0,1]; each agent's speed integrates to 1.
class EatingSpeedSchedule {
 public:
  explicit EatingSpeedSchedule(std::vector<std::vector<SpeedPiece>> per_agent);
  static EatingSpeedSchedule unit(int n);

  [[nodiscard]] int agents() const { return static_cast<int>(pieces_.size()); }
  [[nodiscard]] const std::vector<SpeedPiece>& pieces(AgentIndex i) const { return pieces_.at(i); }
  // Speed of agent i at time t in [0,1).
  [[nodiscard]] const Rational& speed_at(AgentIndex i, const Rational& t) const;
  // Earliest breakpoint of any agent strictly after t (1 if none).
  [[nodiscard]] Rational next_breakpoint_after(const Rational& t) const;
  // Integral of agent i's speed over [0, t].
  [[nodiscard]] Rational consumed_by(AgentIndex i, const Rational& t) const;

  friend bool operator==(const EatingSpeedSchedule&, const EatingSpeedSchedule&) = default;

 private:
  std::vector<std::vector<SpeedPiece>> pieces_;
};

// State right after one event of the eating simulation.
struct EatingEvent {
  Rational time;
  std::vector<Rational> remaining_supply;  // per object
  std::vector<Rational> consumed;          // per agent, total eaten so far
};

Assignment serial_dictatorship(const Profile& profile, const PriorityOrder& order);
// Exact uniform average of serial dictatorship over all n! priority orders.
Assignment random_priority(const Profile& profile, const EnumerationLimits& limits = {});
Assignment simultaneous_eating(const Profile& profile, const EatingSpeedSchedule& speeds,
                               std::vector<EatingEvent>* trace = nullptr);
Assignment probabilistic_serial(const Profile& profile);

Mechanism make_serial_dictatorship(const PriorityOrder& order);
Mechanism make_random_priority(int n, const EnumerationLimits& limits = {});
Mechanism make_simultaneous_eating(const EatingSpeedSchedule& speeds);
Mechanism make_probabilistic_serial(int n);

// Table lookup over the full (n!)^n profile domain. Throws InputError naming the
// first missing profile (enumeration order) or the profile whose matrix is invalid.
Mechanism tabulated_mechanism(const Instance& instance,
                              const std::map<Profile, std::vector<std::vector<Rational>>>& table,
                              const EnumerationLimits& limits = {});
Mechanism tabulated_mechanism(const Instance& instance, const std::map<Profile, Assignment>& table,
                              const EnumerationLimits& limits = {});

}  // namespace ram

#endif  // RAM_MECHANISMS_HPP_
