#include "llpmatch/bipartite.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "llpmatch/errors.hpp"

namespace llpmatch {

void BipartiteGraph::add_edge(AgentId man, AgentId woman) {
  if (man < 0 || man >= size() || woman < 0 || woman >= size()) {
    throw ValidationError("bipartite edge out of range");
  }
  auto& list = adjacency_[man];
  auto it = std::lower_bound(list.begin(), list.end(), woman);
  if (it == list.end() || *it != woman) list.insert(it, woman);
}

bool BipartiteGraph::has_edge(AgentId man, AgentId woman) const {
  return std::binary_search(adjacency_[man].begin(), adjacency_[man].end(), woman);
}

std::vector<int> BipartiteGraph::woman_degrees() const {
  std::vector<int> degree(adjacency_.size(), 0);
  for (const auto& list : adjacency_) {
    for (AgentId w : list) ++degree[w];
  }
  return degree;
}

std::size_t BipartiteGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& list : adjacency_) total += list.size();
  return total;
}

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

// Hopcroft-Karp over an explicit edge filter so the same routine serves
// the lexicographic search (which pins and removes edges).
class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteGraph& graph)
      : graph_(graph), n_(graph.size()), wife_(n_, -1), husband_(n_, -1), layer_(n_, 0) {}

  int run() {
    int size = 0;
    while (bfs()) {
      for (AgentId m = 0; m < n_; ++m) {
        if (wife_[m] == -1 && dfs(m)) ++size;
      }
    }
    return size;
  }

  const std::vector<AgentId>& wives() const { return wife_; }

 private:
  bool bfs() {
    std::queue<AgentId> frontier;
    for (AgentId m = 0; m < n_; ++m) {
      if (wife_[m] == -1) {
        layer_[m] = 0;
        frontier.push(m);
      } else {
        layer_[m] = kInf;
      }
    }
    bool found = false;
    while (!frontier.empty()) {
      const AgentId m = frontier.front();
      frontier.pop();
      for (AgentId w : graph_.women_of(m)) {
        const AgentId h = husband_[w];
        if (h == -1) {
          found = true;
        } else if (layer_[h] == kInf) {
          layer_[h] = layer_[m] + 1;
          frontier.push(h);
        }
      }
    }
    return found;
  }

  bool dfs(AgentId m) {
    for (AgentId w : graph_.women_of(m)) {
      const AgentId h = husband_[w];
      if (h == -1 || (layer_[h] == layer_[m] + 1 && dfs(h))) {
        wife_[m] = w;
        husband_[w] = m;
        return true;
      }
    }
    layer_[m] = kInf;
    return false;
  }

  const BipartiteGraph& graph_;
  int n_;
  std::vector<AgentId> wife_;
  std::vector<AgentId> husband_;
  std::vector<int> layer_;
};

}  // namespace

Matching maximum_matching(const BipartiteGraph& graph) {
  HopcroftKarp hk(graph);
  hk.run();
  return Matching(hk.wives());
}

bool is_perfect_matching_graph(const BipartiteGraph& graph) {
  for (AgentId m = 0; m < graph.size(); ++m) {
    if (graph.women_of(m).size() != 1) return false;
  }
  const auto degree = graph.woman_degrees();
  return std::all_of(degree.begin(), degree.end(), [](int d) { return d == 1; });
}

int subset_deficiency(const BipartiteGraph& graph, const std::vector<AgentId>& men) {
  std::vector<bool> neighbour(static_cast<std::size_t>(graph.size()), false);
  int count = 0;
  for (AgentId m : men) {
    for (AgentId w : graph.women_of(m)) {
      if (!neighbour[w]) {
        neighbour[w] = true;
        ++count;
      }
    }
  }
  return static_cast<int>(men.size()) - count;
}

DeficiencyReport deficiency_report(const BipartiteGraph& graph) {
  const int n = graph.size();
  const Matching matching = maximum_matching(graph);

  DeficiencyReport report;
  std::vector<AgentId> husband(static_cast<std::size_t>(n), -1);
  for (AgentId m = 0; m < n; ++m) {
    if (matching.wife(m) != Matching::kUnmatched) {
      ++report.max_matching_size;
      husband[matching.wife(m)] = m;
    }
  }
  report.deficiency = n - report.max_matching_size;
  if (report.deficiency == 0) return report;

  // Men reachable from unmatched men along alternating paths
  // (any edge man -> woman, matched edge woman -> man).
  std::vector<bool> reached(static_cast<std::size_t>(n), false);
  std::queue<AgentId> frontier;
  for (AgentId m = 0; m < n; ++m) {
    if (matching.wife(m) == Matching::kUnmatched) {
      reached[m] = true;
      frontier.push(m);
    }
  }
  while (!frontier.empty()) {
    const AgentId m = frontier.front();
    frontier.pop();
    for (AgentId w : graph.women_of(m)) {
      const AgentId h = husband[w];
      if (h != -1 && !reached[h]) {
        reached[h] = true;
        frontier.push(h);
      }
    }
  }
  std::vector<AgentId> critical;
  for (AgentId m = 0; m < n; ++m) {
    if (reached[m]) critical.push_back(m);
  }

  for (std::size_t k = 0; k < critical.size();) {
    auto without = critical;
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(k));
    if (subset_deficiency(graph, without) == report.deficiency) {
      critical = std::move(without);
    } else {
      ++k;
    }
  }
  report.critical_set = std::move(critical);
  return report;
}

std::optional<Matching> smallest_perfect_matching(const BipartiteGraph& graph) {
  const int n = graph.size();
  auto perfect = [n](const BipartiteGraph& g) {
    HopcroftKarp hk(g);
    return hk.run() == n;
  };
  if (!perfect(graph)) return std::nullopt;

  // Fix men in id order to their smallest woman that still admits a
  // perfect matching of the rest.
  Matching result(n);
  BipartiteGraph remaining = graph;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (AgentId m = 0; m < n; ++m) {
    for (AgentId w : graph.women_of(m)) {
      if (used[w] || !remaining.has_edge(m, w)) continue;
      BipartiteGraph trial(n);
      for (AgentId a = 0; a < n; ++a) {
        for (AgentId b : remaining.women_of(a)) {
          if (a == m) {
            if (b == w) trial.add_edge(a, b);
          } else if (b != w) {
            trial.add_edge(a, b);
          }
        }
      }
      if (perfect(trial)) {
        result.assign(m, w);
        used[w] = true;
        remaining = std::move(trial);
        break;
      }
    }
  }
  return result;
}

}  // namespace llpmatch
