#include "ram/decomp.hpp"

#include <algorithm>
#include <set>

namespace ram {

DeterministicAssignment::DeterministicAssignment(std::vector<ObjectIndex> object_of_agent)
    : object_of_(std::move(object_of_agent)) {
  if (object_of_.empty()) throw InputError("empty deterministic assignment");
  std::vector<bool> taken(object_of_.size(), false);
  for (ObjectIndex a : object_of_) {
    if (a < 0 || a >= size() || taken[a]) {
      throw InputError("deterministic assignment is not a bijection");
    }
    taken[a] = true;
  }
}

Assignment DeterministicAssignment::to_assignment() const {
  const int n = size();
  std::vector<Rational> m(static_cast<std::size_t>(n) * n);
  for (AgentIndex i = 0; i < n; ++i) m[static_cast<std::size_t>(i) * n + object_of_[i]] = 1;
  return validate_assignment(n, std::move(m));
}

Decomposition::Decomposition(std::vector<DecompositionTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw InputError("empty decomposition");
  const int n = terms_.front().component.size();
  Rational total;
  std::set<std::vector<ObjectIndex>> seen;
  for (const auto& t : terms_) {
    if (t.component.size() != n) throw InputError("decomposition components differ in size");
    if (t.weight <= 0) throw InputError("decomposition weight must be positive");
    const auto objs = t.component.objects();
    if (!seen.emplace(objs.begin(), objs.end()).second) {
      throw InputError("decomposition components must be pairwise distinct");
    }
    total += t.weight;
  }
  if (total != 1) throw InputError("decomposition weights sum to " + total.str() + ", not 1");
  const auto bound = static_cast<std::size_t>((n - 1) * (n - 1) + 1);
  if (terms_.size() > bound) {
    throw InputError("decomposition has " + std::to_string(terms_.size()) +
                     " terms, more than (n-1)^2+1 = " + std::to_string(bound));
  }
}

namespace {

// Kuhn's augmenting path search; agents and objects scanned in index order.
bool augment(AgentIndex i, const std::vector<std::vector<bool>>& support,
             std::vector<bool>& visited, std::vector<AgentIndex>& agent_of) {
  const int n = static_cast<int>(support.size());
  for (ObjectIndex a = 0; a < n; ++a) {
    if (!support[i][a] || visited[a]) continue;
    visited[a] = true;
    if (agent_of[a] == -1 || augment(agent_of[a], support, visited, agent_of)) {
      agent_of[a] = i;
      return true;
    }
  }
  return false;
}

std::optional<std::vector<ObjectIndex>> perfect_matching(
    const std::vector<std::vector<bool>>& support) {
  const int n = static_cast<int>(support.size());
  std::vector<AgentIndex> agent_of(n, -1);
  for (AgentIndex i = 0; i < n; ++i) {
    std::vector<bool> visited(n, false);
    if (!augment(i, support, visited, agent_of)) return std::nullopt;
  }
  std::vector<ObjectIndex> object_of(n);
  for (ObjectIndex a = 0; a < n; ++a) object_of[agent_of[a]] = a;
  return object_of;
}

}  // namespace

Decomposition birkhoff_decompose(const Assignment& assignment) {
  const int n = assignment.size();
  std::vector<Rational> rest = assignment.entries();
  auto at = [&](AgentIndex i, ObjectIndex a) -> Rational& {
    return rest[static_cast<std::size_t>(i) * n + a];
  };
  std::vector<DecompositionTerm> terms;
  Rational remaining(1);
  while (!remaining.is_zero()) {
    std::vector<std::vector<bool>> support(n, std::vector<bool>(n));
    for (AgentIndex i = 0; i < n; ++i) {
      for (ObjectIndex a = 0; a < n; ++a) support[i][a] = at(i, a) > 0;
    }
    auto matching = perfect_matching(support);
    if (!matching) {
      throw InternalError("no perfect matching on the support of a scaled bistochastic matrix");
    }
    Rational weight = at(0, (*matching)[0]);
    for (AgentIndex i = 1; i < n; ++i) {
      if (at(i, (*matching)[i]) < weight) weight = at(i, (*matching)[i]);
    }
    for (AgentIndex i = 0; i < n; ++i) at(i, (*matching)[i]) -= weight;
    remaining -= weight;
    terms.push_back({weight, DeterministicAssignment(std::move(*matching))});
  }
  for (const auto& x : rest) {
    if (!x.is_zero()) throw InternalError("decomposition left a nonzero residual");
  }
  return Decomposition(std::move(terms));
}

Assignment recombine(const Decomposition& decomposition) {
  const int n = decomposition.n();
  std::vector<Rational> m(static_cast<std::size_t>(n) * n);
  for (const auto& t : decomposition.terms()) {
    for (AgentIndex i = 0; i < n; ++i) {
      m[static_cast<std::size_t>(i) * n + t.component[i]] += t.weight;
    }
  }
  return validate_assignment(n, std::move(m));
}

std::vector<int> find_cycle(const std::vector<std::vector<bool>>& edges) {
  const int n = static_cast<int>(edges.size());
  enum : char { kWhite, kGrey, kBlack };
  std::vector<char> color(n, kWhite);
  std::vector<int> stack;

  // Iterative DFS keeping the grey path on `stack`.
  std::vector<int> next(n, 0);
  for (int root = 0; root < n; ++root) {
    if (color[root] != kWhite) continue;
    stack.push_back(root);
    color[root] = kGrey;
    while (!stack.empty()) {
      const int v = stack.back();
      if (next[v] == n) {
        color[v] = kBlack;
        stack.pop_back();
        continue;
      }
      const int w = next[v]++;
      if (!edges[v][w]) continue;
      if (color[w] == kGrey) {
        auto from = std::find(stack.begin(), stack.end(), w);
        return {from, stack.end()};
      }
      if (color[w] == kWhite) {
        color[w] = kGrey;
        stack.push_back(w);
      }
    }
  }
  return {};
}

std::vector<AgentIndex> improvement_cycle(const DeterministicAssignment& d, const Profile& profile) {
  const int n = d.size();
  if (profile.size() != n) throw InputError("profile size does not match assignment");
  std::vector<std::vector<bool>> edges(n, std::vector<bool>(n));
  for (AgentIndex i = 0; i < n; ++i) {
    for (AgentIndex j = 0; j < n; ++j) {
      edges[i][j] = i != j && profile[i].prefers(d[j], d[i]);
    }
  }
  return find_cycle(edges);
}

bool deterministic_pareto_efficient(const DeterministicAssignment& d, const Profile& profile) {
  return improvement_cycle(d, profile).empty();
}

}  // namespace ram
