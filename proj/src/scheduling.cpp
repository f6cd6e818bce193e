#include "llpmatch/scheduling.hpp"

#include <algorithm>
#include <memory>
#include <string>

#include "llpmatch/errors.hpp"

namespace llpmatch {

namespace {

void check_acyclic(const std::vector<std::vector<std::size_t>>& pre) {
  const std::size_t n = pre.size();
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<std::size_t>> succ(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i : pre[j]) {
      succ[i].push_back(j);
      ++indegree[j];
    }
  }
  std::vector<std::size_t> ready;
  for (std::size_t j = 0; j < n; ++j) {
    if (indegree[j] == 0) ready.push_back(j);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const std::size_t i = ready.back();
    ready.pop_back();
    ++seen;
    for (std::size_t j : succ[i]) {
      if (--indegree[j] == 0) ready.push_back(j);
    }
  }
  if (seen != n) throw CyclicPrerequisites("prerequisite lists contain a cycle");
}

}  // namespace

LatticeProblem make_job_scheduling(std::vector<Value> durations,
                                   std::vector<std::vector<std::size_t>> prerequisites) {
  const std::size_t n = durations.size();
  if (prerequisites.size() != n) {
    throw ValidationError("need one prerequisite list per job");
  }
  Value total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (durations[j] < 0) throw ValidationError("job " + std::to_string(j) + " has negative duration");
    total += durations[j];
    for (std::size_t i : prerequisites[j]) {
      if (i >= n) throw ValidationError("prerequisite id out of range");
    }
  }
  check_acyclic(prerequisites);

  auto t = std::make_shared<const std::vector<Value>>(std::move(durations));
  auto pre = std::make_shared<const std::vector<std::vector<std::size_t>>>(std::move(prerequisites));
  auto earliest = [t, pre](StateView g, std::size_t j) {
    Value need = (*t)[j];
    for (std::size_t i : (*pre)[j]) need = std::max(need, g[i] + (*t)[j]);
    return need;
  };

  LatticeProblem problem;
  problem.initial = *t;
  // No completion time exceeds the sum of all durations.
  problem.top.assign(n, total);
  problem.forbidden = [earliest](StateView g, std::size_t j) { return g[j] < earliest(g, j); };
  problem.advance = earliest;
  return problem;
}

LatticeProblem make_shortest_path(std::size_t source,
                                  std::vector<std::vector<WeightedArc>> predecessors) {
  const std::size_t n = predecessors.size();
  if (source >= n) throw ValidationError("source out of range");
  for (const auto& arcs : predecessors) {
    for (const auto& arc : arcs) {
      if (arc.from >= n) throw ValidationError("arc endpoint out of range");
      if (arc.weight < 0) throw ValidationError("negative arc weight");
    }
  }

  auto pre = std::make_shared<const std::vector<std::vector<WeightedArc>>>(std::move(predecessors));
  auto best = [pre](StateView g, std::size_t j) {
    Value d = kUnreachable;
    for (const auto& arc : (*pre)[j]) {
      if (g[arc.from] >= kUnreachable) continue;
      d = std::min(d, g[arc.from] + arc.weight);
    }
    return d;
  };

  LatticeProblem problem;
  problem.order = Order::Descending;
  problem.initial.assign(n, kUnreachable);
  problem.initial[source] = 0;
  problem.top.assign(n, 0);
  problem.forbidden = [best](StateView g, std::size_t j) { return g[j] > best(g, j); };
  problem.advance = best;
  return problem;
}

}  // namespace llpmatch
