#pragma once

#include <optional>
#include <vector>

#include "llpmatch/profile.hpp"

namespace llpmatch {

/// Men 0..n-1 on the left, women 0..n-1 on the right.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  explicit BipartiteGraph(int n) : adjacency_(static_cast<std::size_t>(n)) {}

  int size() const { return static_cast<int>(adjacency_.size()); }

  /// Ignores duplicates; throws ValidationError on out-of-range ids.
  void add_edge(AgentId man, AgentId woman);
  bool has_edge(AgentId man, AgentId woman) const;

  /// Sorted neighbours of a man.
  const std::vector<AgentId>& women_of(AgentId man) const { return adjacency_[man]; }
  std::vector<int> woman_degrees() const;
  std::size_t edge_count() const;

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

 private:
  std::vector<std::vector<AgentId>> adjacency_;
};

/// Hopcroft-Karp maximum matching.
Matching maximum_matching(const BipartiteGraph& graph);

/// Every man and every woman has degree exactly one, i.e. the graph itself
/// is a perfect matching.
bool is_perfect_matching_graph(const BipartiteGraph& graph);

struct DeficiencyReport {
  int max_matching_size = 0;
  int deficiency = 0;
  /// Sorted; empty iff deficiency is zero.
  std::vector<AgentId> critical_set;
};

/// Deficiency max_Z |Z| - |N(Z)| and the minimal maximally deficient set of
/// men. The set is built from a maximum matching as the unmatched men plus
/// everything they reach by alternating paths, followed by a removal pass
/// in increasing id order that drops any man whose removal keeps the
/// deficiency.
DeficiencyReport deficiency_report(const BipartiteGraph& graph);

/// |Z| - |N(Z)| for the given set of men.
int subset_deficiency(const BipartiteGraph& graph, const std::vector<AgentId>& men);

/// Lexicographically smallest perfect matching (by man id, then woman id)
/// contained in the graph, if any.
std::optional<Matching> smallest_perfect_matching(const BipartiteGraph& graph);

}  // namespace llpmatch
