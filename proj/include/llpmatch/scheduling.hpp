#pragma once

// The two textbook LLP instantiations: minimum completion times of jobs
// with prerequisites, and single-source shortest paths (a descending
// instantiation started from an infinity sentinel).

#include <cstddef>
#include <limits>
#include <vector>

#include "llpmatch/lattice.hpp"

namespace llpmatch {

/// Distance reported for nodes the source cannot reach.
inline constexpr Value kUnreachable = std::numeric_limits<Value>::max() / 4;

/// `durations[j]` is t_j; `prerequisites[j]` lists jobs that must finish
/// before j starts (0-based). Initial vector is G[j] = t_j. Throws
/// CyclicPrerequisites when the prerequisite relation has a cycle and
/// ValidationError on negative durations or out-of-range ids.
LatticeProblem make_job_scheduling(std::vector<Value> durations,
                                   std::vector<std::vector<std::size_t>> prerequisites);

struct WeightedArc {
  std::size_t from = 0;
  Value weight = 0;
};

/// `predecessors[j]` lists arcs (i -> j, w). Weights must be non-negative.
LatticeProblem make_shortest_path(std::size_t source,
                                  std::vector<std::vector<WeightedArc>> predecessors);

}  // namespace llpmatch
