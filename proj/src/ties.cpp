#include "llpmatch/ties.hpp"

#include <algorithm>
#include <memory>

#include "llpmatch/errors.hpp"

namespace llpmatch {

std::vector<Rank> best_received(const PreferenceProfile& profile, std::span<const Rank> g) {
  const int n = profile.size();
  std::vector<Rank> best(static_cast<std::size_t>(n), 0);
  for (AgentId w = 0; w < n; ++w) {
    for (AgentId i = 0; i < n; ++i) {
      if (profile.man_rank(i, w) > g[i]) continue;
      const Rank r = profile.woman_rank(w, i);
      if (best[w] == 0 || r < best[w]) best[w] = r;
    }
  }
  return best;
}

BipartiteGraph build_proposal_graph(const PreferenceProfile& profile, std::span<const Rank> g) {
  const int n = profile.size();
  const auto best = best_received(profile, g);
  BipartiteGraph graph(n);
  for (AgentId w = 0; w < n; ++w) {
    if (best[w] == 0) continue;
    for (AgentId i = 0; i < n; ++i) {
      if (profile.man_rank(i, w) <= g[i] && profile.woman_rank(w, i) == best[w]) graph.add_edge(i, w);
    }
  }
  return graph;
}

bool forbidden_superstable(std::span<const Rank> g, AgentId j, const PreferenceProfile& profile) {
  for (AgentId z : profile.man_group(j, g[j])) {
    const Rank mine = profile.woman_rank(z, j);
    bool covered = false;
    for (AgentId i = 0; i < profile.size() && !covered; ++i) {
      covered = i != j && profile.man_rank(i, z) <= g[i] && profile.woman_rank(z, i) <= mine;
    }
    if (!covered) return false;
  }
  return true;
}

namespace {

ProposalVector to_ranks(StateView view) { return ProposalVector(view.begin(), view.end()); }

}  // namespace

LatticeProblem make_superstable_problem(const PreferenceProfile& profile, const ConstraintPoset& poset) {
  auto shared_profile = std::make_shared<const PreferenceProfile>(profile);
  auto shared_poset = std::make_shared<const ConstraintPoset>(poset);

  LatticeProblem problem;
  const auto floor = poset.initial_vector();
  problem.initial.assign(floor.begin(), floor.end());
  for (AgentId m = 0; m < profile.size(); ++m) problem.top.push_back(profile.group_count(m));
  problem.forbidden = [shared_profile, shared_poset](StateView view, std::size_t j) {
    const auto g = to_ranks(view);
    const auto man = static_cast<AgentId>(j);
    return forbidden_superstable(g, man, *shared_profile) || lags(g, *shared_poset, man);
  };
  problem.advance = [](StateView g, std::size_t j) { return g[j] + 1; };
  problem.priority = [shared_profile](StateView view, std::size_t j) {
    return forbidden_superstable(to_ranks(view), static_cast<AgentId>(j), *shared_profile) ? 0 : 1;
  };
  return problem;
}

TiesResult solve_superstable(const PreferenceProfile& profile, std::span<const Constraint> constraints,
                             const SolveOptions& options, const StepObserver& observer) {
  for (const auto& c : constraints) {
    if (std::holds_alternative<ForbiddenPair>(c) || std::holds_alternative<RawEdge>(c)) {
      throw TiesUnsupportedForConstraint("the superstable solver accepts only regret_le and floor constraints");
    }
  }
  const auto poset = compile_constraints(profile, constraints);
  const auto outcome = solve_lattice(make_superstable_problem(profile, poset), options, observer);

  TiesResult result;
  result.ranks = to_ranks(outcome.state);
  result.rounds = outcome.advances;
  if (!outcome.feasible()) {
    result.exhausted_man = static_cast<AgentId>(*outcome.exhausted);
    return result;
  }
  const auto graph = build_proposal_graph(profile, result.ranks);
  if (!is_perfect_matching_graph(graph)) {
    throw MalformedProblem("superstable fixpoint whose proposal graph is not a perfect matching");
  }
  Matching matching(profile.size());
  for (AgentId m = 0; m < profile.size(); ++m) matching.assign(m, graph.women_of(m).front());
  result.matching = std::move(matching);
  return result;
}

TiesResult solve_strongly_stable(const PreferenceProfile& profile) {
  const int n = profile.size();
  TiesResult result;
  result.ranks.assign(static_cast<std::size_t>(n), 1);
  for (;; ++result.rounds) {
    const auto graph = build_proposal_graph(profile, result.ranks);
    if (auto matching = smallest_perfect_matching(graph)) {
      result.matching = std::move(matching);
      return result;
    }
    const auto report = deficiency_report(graph);
    for (AgentId m : report.critical_set) {
      if (result.ranks[m] == profile.group_count(m)) {
        result.exhausted_man = m;
        return result;
      }
    }
    for (AgentId m : report.critical_set) ++result.ranks[m];
  }
}

ProposalVector meet(std::span<const Rank> a, std::span<const Rank> b) {
  ProposalVector out(a.size());
  std::transform(a.begin(), a.end(), b.begin(), out.begin(), [](Rank x, Rank y) { return std::min(x, y); });
  return out;
}

ProposalVector join(std::span<const Rank> a, std::span<const Rank> b) {
  ProposalVector out(a.size());
  std::transform(a.begin(), a.end(), b.begin(), out.begin(), [](Rank x, Rank y) { return std::max(x, y); });
  return out;
}

}  // namespace llpmatch
