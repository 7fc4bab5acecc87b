#ifndef RAM_DECOMP_HPP_
#define RAM_DECOMP_HPP_

#include <vector>

#include "ram/core.hpp"

namespace ram {

// A 0/1 assignment, stored as agent -> object.
class DeterministicAssignment {
 public:
  explicit DeterministicAssignment(std::vector<ObjectIndex> object_of_agent);

  [[nodiscard]] int size() const { return static_cast<int>(object_of_.size()); }
  [[nodiscard]] ObjectIndex operator[](AgentIndex i) const { return object_of_[i]; }
  [[nodiscard]] std::span<const ObjectIndex> objects() const { return object_of_; }
  [[nodiscard]] Assignment to_assignment() const;

  friend bool operator==(const DeterministicAssignment&, const DeterministicAssignment&) = default;
  friend auto operator<=>(const DeterministicAssignment&, const DeterministicAssignment&) = default;

 private:
  std::vector<ObjectIndex> object_of_;
};

struct DecompositionTerm {
  Rational weight;
  DeterministicAssignment component;
};

// Convex combination of pairwise distinct deterministic assignments with
// positive weights summing to 1 and at most (n-1)^2 + 1 terms.
class Decomposition {
 public:
  explicit Decomposition(std::vector<DecompositionTerm> terms);

  [[nodiscard]] int n() const { return terms_.front().component.size(); }
  [[nodiscard]] const std::vector<DecompositionTerm>& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

 private:
  std::vector<DecompositionTerm> terms_;
};

// Greedy Birkhoff-von Neumann extraction: repeatedly find the lexicographically
// first perfect matching on the positive support and subtract its minimum entry.
Decomposition birkhoff_decompose(const Assignment& assignment);
Assignment recombine(const Decomposition& decomposition);

// True iff no group of agents can trade objects along a cycle and all strictly gain.
bool deterministic_pareto_efficient(const DeterministicAssignment& d, const Profile& profile);
// Agents on an improvement cycle, empty if efficient.
std::vector<AgentIndex> improvement_cycle(const DeterministicAssignment& d, const Profile& profile);

// Directed-cycle search on a dense adjacency matrix; returns the vertices of
// the first cycle found (vertices scanned in index order), or empty.
std::vector<int> find_cycle(const std::vector<std::vector<bool>>& edges);

}  // namespace ram

#endif  // RAM_DECOMP_HPP_
