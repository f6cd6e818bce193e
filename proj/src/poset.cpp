#include "llpmatch/poset.hpp"

#include <algorithm>
#include <string>

#include "llpmatch/errors.hpp"

namespace llpmatch {

ConstraintPoset::ConstraintPoset(int n)
    : n_(n),
      incoming_(static_cast<std::size_t>(n), std::vector<std::vector<ProposalEvent>>(static_cast<std::size_t>(n))),
      outgoing_(static_cast<std::size_t>(n)),
      forbidden_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), false),
      floor_(static_cast<std::size_t>(n), 1) {}

std::span<const ProposalEvent> ConstraintPoset::prerequisites(AgentId man, Rank rank) const {
  if (rank < 1 || rank > n_) return {};
  return incoming_[man][rank - 1];
}

void ConstraintPoset::add_edge(const PrecedenceEdge& edge) {
  if (std::find(edges_.begin(), edges_.end(), edge) != edges_.end()) return;
  edges_.push_back(edge);
  incoming_[edge.after.man][edge.after.rank - 1].push_back(edge.before);
  outgoing_[edge.before.man].push_back(edge);
}

void ConstraintPoset::forbid(AgentId man, AgentId woman) {
  forbidden_[index(man, woman)] = true;
  has_forbidden_ = true;
}

void ConstraintPoset::raise_floor(AgentId man, Rank rank) {
  if (rank > floor_[man]) {
    floor_[man] = rank;
    has_floor_ = true;
  }
}

namespace {

// Kahn's algorithm over the n*n event grid.
bool has_cycle(const ConstraintPoset& poset) {
  const int n = poset.size();
  auto id = [n](const ProposalEvent& e) { return static_cast<std::size_t>(e.man) * n + (e.rank - 1); };
  const std::size_t total = static_cast<std::size_t>(n) * n;
  std::vector<std::vector<std::size_t>> succ(total);
  std::vector<std::size_t> indegree(total, 0);
  for (int m = 0; m < n; ++m) {
    for (Rank r = 1; r < n; ++r) {
      succ[id({m, r})].push_back(id({m, r + 1}));
      ++indegree[id({m, r + 1})];
    }
  }
  for (const auto& e : poset.edges()) {
    succ[id(e.before)].push_back(id(e.after));
    ++indegree[id(e.after)];
  }
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < total; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const auto v = ready.back();
    ready.pop_back();
    ++seen;
    for (auto u : succ[v]) {
      if (--indegree[u] == 0) ready.push_back(u);
    }
  }
  return seen != total;
}

}  // namespace

ConstraintPoset compile_constraints(const PreferenceProfile& profile, std::span<const Constraint> constraints) {
  const int n = profile.size();
  ConstraintPoset poset(n);
  for (const auto& constraint : constraints) {
    if (const auto* c = std::get_if<RegretLE>(&constraint)) {
      if (c->lower == c->upper) continue;
      for (Rank r = 1; r <= profile.group_count(c->lower); ++r) {
        poset.add_edge({{c->upper, r}, {c->lower, r}});
      }
    } else if (const auto* c = std::get_if<ForbiddenPair>(&constraint)) {
      if (!profile.strict()) throw TiesUnsupportedForConstraint("forbid is only supported without ties");
      poset.forbid(c->man, c->woman);
    } else if (const auto* c = std::get_if<LowerBound>(&constraint)) {
      if (static_cast<int>(c->floor.size()) != n) throw ValidationError("floor needs one entry per man");
      for (int m = 0; m < n; ++m) poset.raise_floor(m, c->floor[m]);
    } else if (const auto* c = std::get_if<RawEdge>(&constraint)) {
      if (!profile.strict()) throw TiesUnsupportedForConstraint("edge is only supported without ties");
      if (c->before_man == c->after_man) {
        // Implied by (or contradicting) the man's own chain.
        if (c->before_rank < c->after_rank) continue;
        throw CyclicConstraints("edge " + std::to_string(c->before_man + 1) + " " +
                                std::to_string(c->before_rank) + " -> " + std::to_string(c->after_rank) +
                                " runs against the man's own proposal order");
      }
      poset.add_edge({{c->before_man, c->before_rank}, {c->after_man, c->after_rank}});
    }
  }
  if (has_cycle(poset)) throw CyclicConstraints("constraint relation contains a cycle");
  return poset;
}

bool lags(std::span<const Rank> g, const ConstraintPoset& poset, AgentId j) {
  for (const auto& e : poset.outgoing(j)) {
    if (g[e.after.man] >= e.after.rank && g[j] < e.before.rank) return true;
  }
  return false;
}

bool is_consistent(std::span<const Rank> g, const ConstraintPoset& poset) {
  return std::none_of(poset.edges().begin(), poset.edges().end(), [&](const PrecedenceEdge& e) {
    return g[e.after.man] >= e.after.rank && g[e.before.man] < e.before.rank;
  });
}

}  // namespace llpmatch
