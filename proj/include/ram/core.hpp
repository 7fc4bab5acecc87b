#ifndef RAM_CORE_HPP_
#define RAM_CORE_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ram/errors.hpp"
#include "ram/rational.hpp"

namespace ram {

// Agents, objects and ranks are dense zero-based indices. Names exist only for I/O.
using AgentIndex = int;
using ObjectIndex = int;

struct EnumerationLimits {
  int max_preference_n = 6;  // enumerate_preferences, random priority
  int max_sweep_n = 4;       // anything walking all (n!)^(n-1) opponent profiles
};

// n agents and n named objects.
class Instance {
 public:
  explicit Instance(std::vector<std::string> object_names);
  // Objects named a, b, c, ... (o27, o28, ... beyond z).
  static Instance with_default_names(int n);

  [[nodiscard]] int size() const { return static_cast<int>(names_.size()); }
  [[nodiscard]] const std::string& object_name(ObjectIndex a) const;
  [[nodiscard]] ObjectIndex object_index(std::string_view name) const;
  [[nodiscard]] const std::vector<std::string>& object_names() const { return names_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<std::string> names_;
};

// A strict ranking of the objects; ranking()[k] is the object at rank k (0 = best).
class Preference {
 public:
  Preference() = default;
  explicit Preference(std::vector<ObjectIndex> ranking);
  static Preference identity(int n);
  // The preference at position `index` of enumerate_preferences(n).
  static Preference from_lex_index(int n, std::uint64_t index);

  [[nodiscard]] int size() const { return static_cast<int>(ranking_.size()); }
  [[nodiscard]] std::span<const ObjectIndex> ranking() const { return ranking_; }
  // Throws InputError for rank outside [0, n).
  [[nodiscard]] ObjectIndex object_at(int rank) const;
  [[nodiscard]] int rank_of(ObjectIndex a) const;
  [[nodiscard]] bool prefers(ObjectIndex a, ObjectIndex b) const {
    return position_[a] < position_[b];
  }
  // Objects strictly better (upper) or strictly worse (lower) than `a`, best first.
  [[nodiscard]] std::vector<ObjectIndex> upper_contour(ObjectIndex a) const;
  [[nodiscard]] std::vector<ObjectIndex> lower_contour(ObjectIndex a) const;
  // Exchanges the objects at ranks k and k+1.
  [[nodiscard]] Preference swapped_at(int rank) const;
  [[nodiscard]] std::uint64_t lex_index() const;

  friend bool operator==(const Preference& a, const Preference& b) {
    return a.ranking_ == b.ranking_;
  }
  friend auto operator<=>(const Preference& a, const Preference& b) {
    return a.ranking_ <=> b.ranking_;
  }

 private:
  std::vector<ObjectIndex> ranking_;
  std::vector<int> position_;
};

class Profile {
 public:
  Profile() = default;
  explicit Profile(std::vector<Preference> preferences);

  [[nodiscard]] int size() const { return static_cast<int>(prefs_.size()); }
  [[nodiscard]] const Preference& operator[](AgentIndex i) const { return prefs_.at(i); }
  [[nodiscard]] std::span<const Preference> preferences() const { return prefs_; }
  // Replaces agent i's preference. The size must match.
  void set(AgentIndex i, const Preference& p);
  [[nodiscard]] Profile with(AgentIndex i, const Preference& p) const;

  friend bool operator==(const Profile&, const Profile&) = default;
  friend auto operator<=>(const Profile& a, const Profile& b) { return a.prefs_ <=> b.prefs_; }

 private:
  std::vector<Preference> prefs_;
};

// One agent's lottery over objects: shares in [0,1] summing to exactly 1.
class ShareVector {
 public:
  explicit ShareVector(std::vector<Rational> shares);

  [[nodiscard]] int size() const { return static_cast<int>(shares_.size()); }
  [[nodiscard]] const Rational& operator[](ObjectIndex a) const { return shares_.at(a); }
  [[nodiscard]] std::span<const Rational> shares() const { return shares_; }
  operator std::span<const Rational>() const { return shares_; }  // NOLINT

  friend bool operator==(const ShareVector&, const ShareVector&) = default;

 private:
  std::vector<Rational> shares_;
};

// Bistochastic n x n matrix; rows are agents, columns objects.
// Only obtainable through validate_assignment.
class Assignment {
 public:
  [[nodiscard]] int size() const { return n_; }
  [[nodiscard]] const Rational& operator()(AgentIndex i, ObjectIndex a) const {
    return entries_[static_cast<std::size_t>(i) * n_ + a];
  }
  [[nodiscard]] std::span<const Rational> row(AgentIndex i) const {
    return std::span<const Rational>(entries_).subspan(static_cast<std::size_t>(i) * n_, n_);
  }
  [[nodiscard]] ShareVector share_vector(AgentIndex i) const;
  [[nodiscard]] const std::vector<Rational>& entries() const { return entries_; }
  [[nodiscard]] std::vector<std::vector<Rational>> rows() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  friend Assignment validate_assignment(int n, std::vector<Rational> row_major);
  Assignment(int n, std::vector<Rational> entries) : n_(n), entries_(std::move(entries)) {}

  int n_ = 0;
  std::vector<Rational> entries_;
};

struct AssignmentViolation {
  enum class Kind { kEntryOutOfRange, kRowSum, kColumnSum };
  Kind kind;
  int row = -1;     // -1 for column-sum violations
  int column = -1;  // -1 for row-sum violations
  Rational value;   // the offending entry or sum

  [[nodiscard]] std::string describe() const;
};

// Thrown when a matrix is not bistochastic; lists every violated condition.
class AssignmentError : public InputError {
 public:
  explicit AssignmentError(std::vector<AssignmentViolation> violations);
  [[nodiscard]] const std::vector<AssignmentViolation>& violations() const { return violations_; }

 private:
  std::vector<AssignmentViolation> violations_;
};

[[nodiscard]] std::vector<AssignmentViolation> assignment_violations(
    int n, std::span<const Rational> row_major);
Assignment validate_assignment(int n, std::vector<Rational> row_major);
Assignment validate_assignment(const std::vector<std::vector<Rational>>& matrix);

// Bijection on objects; relabels preferences so that a P b iff sigma(a) P^sigma sigma(b).
class ObjectPermutation {
 public:
  explicit ObjectPermutation(std::vector<ObjectIndex> image);
  static ObjectPermutation identity(int n);
  static ObjectPermutation transposition(int n, ObjectIndex a, ObjectIndex b);

  [[nodiscard]] int size() const { return static_cast<int>(image_.size()); }
  [[nodiscard]] ObjectIndex operator()(ObjectIndex a) const { return image_[a]; }
  [[nodiscard]] std::span<const ObjectIndex> image() const { return image_; }
  [[nodiscard]] ObjectPermutation inverse() const;

  friend bool operator==(const ObjectPermutation&, const ObjectPermutation&) = default;

 private:
  std::vector<ObjectIndex> image_;
};

Preference apply_permutation(const Preference& p, const ObjectPermutation& sigma);
Profile apply_permutation(const Profile& profile, const ObjectPermutation& sigma);

// P' is the (lowered, raised)-swap of P at `position`:
// P(position) = lowered, P(position+1) = raised, and P' exchanges them.
struct SwapInfo {
  int position;
  ObjectIndex lowered;
  ObjectIndex raised;
  friend bool operator==(const SwapInfo&, const SwapInfo&) = default;
};

std::optional<SwapInfo> swap_relation(const Preference& p, const Preference& q);

struct FosdFailure {
  int prefix_length;  // number of top-ranked objects in the failing prefix
  Rational lhs;       // prefix sum of the dominating candidate
  Rational rhs;       // prefix sum of the other vector, strictly larger
};

// Weak first-order stochastic dominance of `first` over `second` under `pref`.
bool fosd(std::span<const Rational> first, std::span<const Rational> second,
          const Preference& pref);
// The shortest prefix at which dominance fails, if any.
std::optional<FosdFailure> first_fosd_failure(std::span<const Rational> first,
                                              std::span<const Rational> second,
                                              const Preference& pref);

std::uint64_t factorial(int n);

// All n! preferences in lexicographic order of their rankings.
std::vector<Preference> enumerate_preferences(int n, const EnumerationLimits& limits = {});

// Opponent profiles P_{-i}, ordered lexicographically by the preferences of the
// remaining agents in agent order. Index-addressed so independent cursors can
// walk disjoint ranges.
class OpponentProfiles {
 public:
  OpponentProfiles(int n, AgentIndex agent, const EnumerationLimits& limits = {});

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] AgentIndex agent() const { return agent_; }
  [[nodiscard]] std::uint64_t count() const { return count_; }
  [[nodiscard]] const std::vector<Preference>& preferences() const { return prefs_; }
  // Preference indices of the opponents (agent order, `agent` skipped).
  [[nodiscard]] std::vector<std::uint32_t> indices(std::uint64_t k) const;
  // Writes opponent profile k into every slot of `profile` except `agent`.
  void fill(std::uint64_t k, Profile& profile) const;
  [[nodiscard]] std::vector<Preference> at(std::uint64_t k) const;

 private:
  int n_;
  AgentIndex agent_;
  std::uint64_t count_;
  std::vector<Preference> prefs_;
};

OpponentProfiles enumerate_opponent_profiles(int n, AgentIndex agent,
                                             const EnumerationLimits& limits = {});

// The full domain of (n!)^n profiles in lexicographic order (agent 0 most significant).
class ProfileSpace {
 public:
  explicit ProfileSpace(int n, const EnumerationLimits& limits = {});

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] std::uint64_t count() const { return count_; }
  [[nodiscard]] const std::vector<Preference>& preferences() const { return prefs_; }
  [[nodiscard]] Profile profile(std::uint64_t index) const;
  void fill(std::uint64_t index, Profile& profile) const;
  [[nodiscard]] std::uint64_t index_of(const Profile& profile) const;

 private:
  int n_;
  std::uint64_t count_;
  std::vector<Preference> prefs_;
};

// Index of `profile` in ProfileSpace order, without the enumeration cap.
std::uint64_t profile_index(const Profile& profile);

// "c>a>b" and "c>a>b | a>b>c | c>a>b".
std::string to_string(const Instance& instance, const Preference& p);
std::string to_string(const Instance& instance, const Profile& profile);

}  // namespace ram

#endif  // RAM_CORE_HPP_
