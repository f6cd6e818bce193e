#include "llpmatch/generator.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "llpmatch/errors.hpp"

namespace llpmatch {

namespace {

PreferenceList random_list(int n, double tie_density, std::mt19937_64& rng) {
  std::vector<AgentId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution tie(tie_density);
  PreferenceList list;
  for (AgentId a : order) {
    if (!list.empty() && tie_density > 0.0 && tie(rng)) {
      list.back().push_back(a);
    } else {
      list.push_back({a});
    }
  }
  for (auto& group : list) std::sort(group.begin(), group.end());
  return list;
}

}  // namespace

Instance generate_instance(const GeneratorOptions& options) {
  if (options.n < 1) throw ValidationError("n must be at least 1");
  if (options.tie_density < 0.0 || options.tie_density > 1.0) {
    throw ValidationError("tie density must lie in [0, 1]");
  }
  const int n = options.n;
  std::mt19937_64 rng(options.seed);

  std::vector<PreferenceList> men;
  std::vector<PreferenceList> women;
  for (int a = 0; a < n; ++a) men.push_back(random_list(n, options.tie_density, rng));
  for (int a = 0; a < n; ++a) women.push_back(random_list(n, options.tie_density, rng));
  Instance instance{PreferenceProfile(std::move(men), std::move(women)), {}};

  // regret_le(a, b) only when a comes after b in this order keeps the
  // regret relation acyclic.
  std::vector<AgentId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> position(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) position[order[k]] = k;

  const bool strict = instance.profile.strict();
  std::uniform_int_distribution<AgentId> agent(0, n - 1);
  std::bernoulli_distribution pick_forbid(0.5);
  for (int k = 0; k < options.constraint_count; ++k) {
    if (n == 1 || (strict && pick_forbid(rng))) {
      if (!strict) break;
      instance.constraints.emplace_back(ForbiddenPair{agent(rng), agent(rng)});
      continue;
    }
    AgentId a = agent(rng);
    AgentId b = agent(rng);
    while (b == a) b = agent(rng);
    if (position[a] < position[b]) std::swap(a, b);
    instance.constraints.emplace_back(RegretLE{a, b});
  }
  return instance;
}

}  // namespace llpmatch
