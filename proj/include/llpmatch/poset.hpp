#pragma once

// Constraint poset over proposal events (man, rank). Each man's proposals
// form an implicit chain; compiled constraints add cross-man precedence
// edges, forbidden (man, woman) pairs and a floor on the proposal vector.

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "llpmatch/profile.hpp"

namespace llpmatch {

struct ProposalEvent {
  AgentId man = 0;
  Rank rank = 1;
  friend auto operator<=>(const ProposalEvent&, const ProposalEvent&) = default;
};

/// `before` must happen before `after`: g[after.man] >= after.rank
/// requires g[before.man] >= before.rank.
struct PrecedenceEdge {
  ProposalEvent before;
  ProposalEvent after;
  friend auto operator<=>(const PrecedenceEdge&, const PrecedenceEdge&) = default;
};

class ConstraintPoset {
 public:
  ConstraintPoset() = default;
  explicit ConstraintPoset(int n);

  int size() const { return n_; }
  const std::vector<PrecedenceEdge>& edges() const { return edges_; }
  bool empty() const { return edges_.empty() && !has_forbidden_ && !has_floor_; }

  /// Events that must precede (man, rank).
  std::span<const ProposalEvent> prerequisites(AgentId man, Rank rank) const;
  /// Edges whose `before` event lies on man's chain.
  std::span<const PrecedenceEdge> outgoing(AgentId man) const { return outgoing_[man]; }

  bool forbids(AgentId man, AgentId woman) const { return forbidden_[index(man, woman)]; }
  /// Smallest rank man may hold (at least 1).
  Rank floor(AgentId man) const { return floor_[man]; }
  ProposalVector initial_vector() const { return floor_; }

  void add_edge(const PrecedenceEdge& edge);
  void forbid(AgentId man, AgentId woman);
  void raise_floor(AgentId man, Rank rank);

 private:
  std::size_t index(AgentId a, AgentId b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b);
  }

  int n_ = 0;
  std::vector<PrecedenceEdge> edges_;
  // incoming_[man][rank - 1]
  std::vector<std::vector<std::vector<ProposalEvent>>> incoming_;
  std::vector<std::vector<PrecedenceEdge>> outgoing_;
  std::vector<bool> forbidden_;
  ProposalVector floor_;
  bool has_forbidden_ = false;
  bool has_floor_ = false;
};

/// Compiles constraints into a poset and checks the full relation (chains
/// plus edges) for cycles.
///
/// RegretLE(a, b) adds ((b, r) -> (a, r)) for every rank r of a. Under ties
/// only RegretLE and LowerBound are accepted; ForbiddenPair and RawEdge
/// throw TiesUnsupportedForConstraint. Throws CyclicConstraints.
ConstraintPoset compile_constraints(const PreferenceProfile& profile, std::span<const Constraint> constraints);

/// No edge ((j, s) -> (i, r)) with g[i] >= r and g[j] < s.
bool is_consistent(std::span<const Rank> g, const ConstraintPoset& poset);

/// Man j lags behind a precedence edge: some executed event of another man
/// has an unexecuted prerequisite on j's chain.
bool lags(std::span<const Rank> g, const ConstraintPoset& poset, AgentId j);

}  // namespace llpmatch
