#include "ram/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace ram {
namespace {

void require_preference_cap(int n, const EnumerationLimits& limits) {
  if (n > limits.max_preference_n) {
    throw ResourceError("preference enumeration cap exceeded: n = " + std::to_string(n) +
                        " > max_preference_n = " + std::to_string(limits.max_preference_n));
  }
}

void require_sweep_cap(int n, const EnumerationLimits& limits) {
  if (n > limits.max_sweep_n) {
    throw ResourceError("profile enumeration cap exceeded: n = " + std::to_string(n) +
                        " > max_sweep_n = " + std::to_string(limits.max_sweep_n));
  }
}

std::uint64_t checked_power(std::uint64_t base, int exponent) {
  std::uint64_t result = 1;
  for (int e = 0; e < exponent; ++e) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
      throw ResourceError("profile count does not fit in 64 bits");
    }
    result *= base;
  }
  return result;
}

std::string default_name(int k) {
  if (k < 26) return std::string(1, static_cast<char>('a' + k));
  return "o" + std::to_string(k + 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// Instance

Instance::Instance(std::vector<std::string> object_names) : names_(std::move(object_names)) {
  if (names_.empty()) throw InputError("an instance needs at least one object");
  std::set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty()) throw InputError("object names must be non-empty");
    if (!seen.insert(name).second) throw InputError("duplicate object name '" + name + "'");
  }
}

Instance Instance::with_default_names(int n) {
  if (n < 1) throw InputError("n must be at least 1");
  std::vector<std::string> names;
  names.reserve(n);
  for (int k = 0; k < n; ++k) names.push_back(default_name(k));
  return Instance(std::move(names));
}

const std::string& Instance::object_name(ObjectIndex a) const {
  if (a < 0 || a >= size()) throw InputError("object index out of range: " + std::to_string(a));
  return names_[a];
}

ObjectIndex Instance::object_index(std::string_view name) const {
  for (int a = 0; a < size(); ++a) {
    if (names_[a] == name) return a;
  }
  throw InputError("unknown object '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Preference

Preference::Preference(std::vector<ObjectIndex> ranking) : ranking_(std::move(ranking)) {
  const int n = size();
  if (n == 0) throw InputError("a preference must rank at least one object");
  position_.assign(n, -1);
  for (int k = 0; k < n; ++k) {
    const ObjectIndex a = ranking_[k];
    if (a < 0 || a >= n) throw InputError("object index out of range in preference");
    if (position_[a] != -1) throw InputError("object ranked twice in preference");
    position_[a] = k;
  }
}

Preference Preference::identity(int n) {
  std::vector<ObjectIndex> r(n);
  std::iota(r.begin(), r.end(), 0);
  return Preference(std::move(r));
}

Preference Preference::from_lex_index(int n, std::uint64_t index) {
  if (index >= factorial(n)) throw InputError("preference index out of range");
  std::vector<ObjectIndex> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<ObjectIndex> ranking;
  ranking.reserve(n);
  for (int k = n - 1; k >= 0; --k) {
    const std::uint64_t block = factorial(k);
    const auto pick = static_cast<std::size_t>(index / block);
    index %= block;
    ranking.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return Preference(std::move(ranking));
}

ObjectIndex Preference::object_at(int rank) const {
  if (rank < 0 || rank >= size()) {
    throw InputError("rank out of range: " + std::to_string(rank));
  }
  return ranking_[rank];
}

int Preference::rank_of(ObjectIndex a) const {
  if (a < 0 || a >= size()) throw InputError("object index out of range: " + std::to_string(a));
  return position_[a];
}

std::vector<ObjectIndex> Preference::upper_contour(ObjectIndex a) const {
  const int k = rank_of(a);
  return {ranking_.begin(), ranking_.begin() + k};
}

std::vector<ObjectIndex> Preference::lower_contour(ObjectIndex a) const {
  const int k = rank_of(a);
  return {ranking_.begin() + k + 1, ranking_.end()};
}

Preference Preference::swapped_at(int rank) const {
  if (rank < 0 || rank + 1 >= size()) {
    throw InputError("swap position out of range: " + std::to_string(rank));
  }
  Preference p = *this;
  std::swap(p.ranking_[rank], p.ranking_[rank + 1]);
  p.position_[p.ranking_[rank]] = rank;
  p.position_[p.ranking_[rank + 1]] = rank + 1;
  return p;
}

std::uint64_t Preference::lex_index() const {
  const int n = size();
  std::uint64_t index = 0;
  for (int k = 0; k < n; ++k) {
    int smaller_after = 0;
    for (int j = k + 1; j < n; ++j) {
      if (ranking_[j] < ranking_[k]) ++smaller_after;
    }
    index += static_cast<std::uint64_t>(smaller_after) * factorial(n - 1 - k);
  }
  return index;
}

// ---------------------------------------------------------------------------
// Profile

Profile::Profile(std::vector<Preference> preferences) : prefs_(std::move(preferences)) {
  const int n = size();
  if (n == 0) throw InputError("a profile needs at least one agent");
  for (const auto& p : prefs_) {
    if (p.size() != n) {
      throw InputError("profile has " + std::to_string(n) + " agents but a preference over " +
                       std::to_string(p.size()) + " objects");
    }
  }
}

void Profile::set(AgentIndex i, const Preference& p) {
  if (p.size() != size()) throw InputError("preference size does not match profile");
  prefs_.at(i) = p;
}

Profile Profile::with(AgentIndex i, const Preference& p) const {
  Profile copy = *this;
  copy.set(i, p);
  return copy;
}

// ---------------------------------------------------------------------------
// ShareVector / Assignment

ShareVector::ShareVector(std::vector<Rational> shares) : shares_(std::move(shares)) {
  if (shares_.empty()) throw InputError("empty share vector");
  for (const auto& s : shares_) {
    if (s < 0 || s > 1) throw InputError("share outside [0,1]: " + s.str());
  }
  const Rational total = sum(shares_);
  if (total != 1) throw InputError("shares sum to " + total.str() + ", not 1");
}

ShareVector Assignment::share_vector(AgentIndex i) const {
  const auto r = row(i);
  return ShareVector(std::vector<Rational>(r.begin(), r.end()));
}

std::vector<std::vector<Rational>> Assignment::rows() const {
  std::vector<std::vector<Rational>> out;
  out.reserve(n_);
  for (int i = 0; i < n_; ++i) {
    const auto r = row(i);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

std::string AssignmentViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kEntryOutOfRange:
      os << "entry (" << row + 1 << "," << column + 1 << ") = " << value << " outside [0,1]";
      break;
    case Kind::kRowSum:
      os << "row " << row + 1 << " sums to " << value;
      break;
    case Kind::kColumnSum:
      os << "column " << column + 1 << " sums to " << value;
      break;
  }
  return os.str();
}

namespace {
std::string join_violations(const std::vector<AssignmentViolation>& v) {
  std::string msg = "not a bistochastic assignment:";
  for (const auto& x : v) msg += " " + x.describe() + ";";
  return msg;
}
}  // namespace

AssignmentError::AssignmentError(std::vector<AssignmentViolation> violations)
    : InputError(join_violations(violations)), violations_(std::move(violations)) {}

std::vector<AssignmentViolation> assignment_violations(int n, std::span<const Rational> m) {
  if (n < 1 || m.size() != static_cast<std::size_t>(n) * n) {
    throw InputError("assignment must be a non-empty square matrix");
  }
  std::vector<AssignmentViolation> out;
  using Kind = AssignmentViolation::Kind;
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < n; ++a) {
      const Rational& x = m[static_cast<std::size_t>(i) * n + a];
      if (x < 0 || x > 1) out.push_back({Kind::kEntryOutOfRange, i, a, x});
    }
  }
  for (int i = 0; i < n; ++i) {
    Rational s;
    for (int a = 0; a < n; ++a) s += m[static_cast<std::size_t>(i) * n + a];
    if (s != 1) out.push_back({Kind::kRowSum, i, -1, s});
  }
  for (int a = 0; a < n; ++a) {
    Rational s;
    for (int i = 0; i < n; ++i) s += m[static_cast<std::size_t>(i) * n + a];
    if (s != 1) out.push_back({Kind::kColumnSum, -1, a, s});
  }
  return out;
}

Assignment validate_assignment(int n, std::vector<Rational> row_major) {
  auto violations = assignment_violations(n, row_major);
  if (!violations.empty()) throw AssignmentError(std::move(violations));
  return Assignment(n, std::move(row_major));
}

Assignment validate_assignment(const std::vector<std::vector<Rational>>& matrix) {
  const int n = static_cast<int>(matrix.size());
  std::vector<Rational> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : matrix) {
    if (static_cast<int>(row.size()) != n) throw InputError("assignment matrix is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return validate_assignment(n, std::move(flat));
}

// ---------------------------------------------------------------------------
// Permutations and swaps

ObjectPermutation::ObjectPermutation(std::vector<ObjectIndex> image) : image_(std::move(image)) {
  std::vector<bool> hit(image_.size(), false);
  for (ObjectIndex b : image_) {
    if (b < 0 || b >= size() || hit[b]) throw InputError("object permutation is not a bijection");
    hit[b] = true;
  }
}

ObjectPermutation ObjectPermutation::identity(int n) {
  std::vector<ObjectIndex> image(n);
  std::iota(image.begin(), image.end(), 0);
  return ObjectPermutation(std::move(image));
}

ObjectPermutation ObjectPermutation::transposition(int n, ObjectIndex a, ObjectIndex b) {
  auto sigma = identity(n);
  std::swap(sigma.image_.at(a), sigma.image_.at(b));
  return sigma;
}

ObjectPermutation ObjectPermutation::inverse() const {
  std::vector<ObjectIndex> inv(image_.size());
  for (int a = 0; a < size(); ++a) inv[image_[a]] = a;
  return ObjectPermutation(std::move(inv));
}

Preference apply_permutation(const Preference& p, const ObjectPermutation& sigma) {
  if (p.size() != sigma.size()) throw InputError("permutation size does not match preference");
  std::vector<ObjectIndex> ranking(p.size());
  for (int k = 0; k < p.size(); ++k) ranking[k] = sigma(p.ranking()[k]);
  return Preference(std::move(ranking));
}

Profile apply_permutation(const Profile& profile, const ObjectPermutation& sigma) {
  std::vector<Preference> prefs;
  prefs.reserve(profile.size());
  for (const auto& p : profile.preferences()) prefs.push_back(apply_permutation(p, sigma));
  return Profile(std::move(prefs));
}

std::optional<SwapInfo> swap_relation(const Preference& p, const Preference& q) {
  if (p.size() != q.size()) throw InputError("preferences over different object counts");
  const auto a = p.ranking();
  const auto b = q.ranking();
  int first = -1;
  for (int k = 0; k < p.size(); ++k) {
    if (a[k] != b[k]) {
      first = k;
      break;
    }
  }
  if (first < 0 || first + 1 >= p.size()) return std::nullopt;
  if (a[first] != b[first + 1] || a[first + 1] != b[first]) return std::nullopt;
  for (int k = first + 2; k < p.size(); ++k) {
    if (a[k] != b[k]) return std::nullopt;
  }
  return SwapInfo{first, a[first], a[first + 1]};
}

// ---------------------------------------------------------------------------
// Stochastic dominance

std::optional<FosdFailure> first_fosd_failure(std::span<const Rational> first,
                                              std::span<const Rational> second,
                                              const Preference& pref) {
  const int n = pref.size();
  if (static_cast<int>(first.size()) != n || static_cast<int>(second.size()) != n) {
    throw InputError("share vectors and preference have mismatched sizes");
  }
  Rational lhs;
  Rational rhs;
  for (int k = 0; k < n; ++k) {
    const ObjectIndex a = pref.ranking()[k];
    lhs += first[a];
    rhs += second[a];
    if (lhs < rhs) return FosdFailure{k + 1, lhs, rhs};
  }
  return std::nullopt;
}

bool fosd(std::span<const Rational> first, std::span<const Rational> second,
          const Preference& pref) {
  return !first_fosd_failure(first, second, pref).has_value();
}

// ---------------------------------------------------------------------------
// Enumeration

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw ResourceError("factorial argument out of range");
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

std::vector<Preference> enumerate_preferences(int n, const EnumerationLimits& limits) {
  if (n < 1) throw InputError("n must be at least 1");
  require_preference_cap(n, limits);
  std::vector<ObjectIndex> ranking(n);
  std::iota(ranking.begin(), ranking.end(), 0);
  std::vector<Preference> out;
  out.reserve(factorial(n));
  do {
    out.emplace_back(ranking);
  } while (std::next_permutation(ranking.begin(), ranking.end()));
  return out;
}

OpponentProfiles::OpponentProfiles(int n, AgentIndex agent, const EnumerationLimits& limits)
    : n_(n), agent_(agent), count_(0) {
  if (n < 1) throw InputError("n must be at least 1");
  if (agent < 0 || agent >= n) throw InputError("agent index out of range");
  require_sweep_cap(n, limits);
  prefs_ = enumerate_preferences(n, limits);
  count_ = checked_power(prefs_.size(), n - 1);
}

std::vector<std::uint32_t> OpponentProfiles::indices(std::uint64_t k) const {
  if (k >= count_) throw InputError("opponent profile index out of range");
  std::vector<std::uint32_t> out(static_cast<std::size_t>(n_ - 1));
  const std::uint64_t base = prefs_.size();
  for (int slot = n_ - 2; slot >= 0; --slot) {
    out[slot] = static_cast<std::uint32_t>(k % base);
    k /= base;
  }
  return out;
}

void OpponentProfiles::fill(std::uint64_t k, Profile& profile) const {
  const auto idx = indices(k);
  int slot = 0;
  for (AgentIndex j = 0; j < n_; ++j) {
    if (j == agent_) continue;
    profile.set(j, prefs_[idx[slot++]]);
  }
}

std::vector<Preference> OpponentProfiles::at(std::uint64_t k) const {
  std::vector<Preference> out;
  for (auto i : indices(k)) out.push_back(prefs_[i]);
  return out;
}

OpponentProfiles enumerate_opponent_profiles(int n, AgentIndex agent,
                                             const EnumerationLimits& limits) {
  return OpponentProfiles(n, agent, limits);
}

ProfileSpace::ProfileSpace(int n, const EnumerationLimits& limits) : n_(n), count_(0) {
  if (n < 1) throw InputError("n must be at least 1");
  require_sweep_cap(n, limits);
  prefs_ = enumerate_preferences(n, limits);
  count_ = checked_power(prefs_.size(), n);
}

void ProfileSpace::fill(std::uint64_t index, Profile& profile) const {
  if (index >= count_) throw InputError("profile index out of range");
  const std::uint64_t base = prefs_.size();
  for (AgentIndex j = n_ - 1; j >= 0; --j) {
    profile.set(j, prefs_[index % base]);
    index /= base;
  }
}

Profile ProfileSpace::profile(std::uint64_t index) const {
  Profile p(std::vector<Preference>(n_, prefs_.front()));
  fill(index, p);
  return p;
}

std::uint64_t ProfileSpace::index_of(const Profile& profile) const {
  if (profile.size() != n_) throw InputError("profile size does not match profile space");
  return profile_index(profile);
}

std::uint64_t profile_index(const Profile& profile) {
  const int n = profile.size();
  const std::uint64_t base = factorial(n);
  checked_power(base, n);
  std::uint64_t index = 0;
  for (const auto& p : profile.preferences()) index = index * base + p.lex_index();
  return index;
}

std::string to_string(const Instance& instance, const Preference& p) {
  std::string out;
  for (int k = 0; k < p.size(); ++k) {
    if (k > 0) out += '>';
    out += instance.object_name(p.ranking()[k]);
  }
  return out;
}

std::string to_string(const Instance& instance, const Profile& profile) {
  std::string out;
  for (int i = 0; i < profile.size(); ++i) {
    if (i > 0) out += " | ";
    out += to_string(instance, profile[i]);
  }
  return out;
}

}  // namespace ram
