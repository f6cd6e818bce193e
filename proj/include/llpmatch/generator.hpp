#pragma once

#include <cstdint>

#include "llpmatch/profile.hpp"

namespace llpmatch {

struct GeneratorOptions {
  int n = 4;
  /// Probability that two adjacent entries of a shuffled list share a tie-group.
  double tie_density = 0.0;
  int constraint_count = 0;
  std::uint64_t seed = 0;
};

/// Random instance. Preference lists are uniform permutations cut into
/// tie-groups; constraints are regret_le (oriented along a random order of
/// the men, so the compiled poset is acyclic) and, on strict instances,
/// forbid pairs. Same options, same instance.
Instance generate_instance(const GeneratorOptions& options);

}  // namespace llpmatch
