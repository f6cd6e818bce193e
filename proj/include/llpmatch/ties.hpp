#pragma once

// Solvers for preference lists with ties: man-optimal superstable matching
// (an LLP instantiation) and strongly stable matching (critical-set
// advancement on the proposal graph Y(G)).

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "llpmatch/bipartite.hpp"
#include "llpmatch/lattice.hpp"
#include "llpmatch/poset.hpp"
#include "llpmatch/profile.hpp"

namespace llpmatch {

/// Y(G): each woman is joined to the proposers she ranks best among all
/// men who proposed to her at some rank k <= g[i]. Women without
/// proposals are isolated.
BipartiteGraph build_proposal_graph(const PreferenceProfile& profile, std::span<const Rank> g);

/// Best (smallest) woman-side rank among proposals each woman received
/// under g; 0 when she received none.
std::vector<Rank> best_received(const PreferenceProfile& profile, std::span<const Rank> g);

/// Man j is forbidden when every woman of his current tie-group has
/// received a proposal from another man she ranks at least as high.
bool forbidden_superstable(std::span<const Rank> g, AgentId j, const PreferenceProfile& profile);

struct TiesResult {
  std::optional<Matching> matching;
  ProposalVector ranks;
  std::optional<AgentId> exhausted_man;
  std::size_t rounds = 0;

  bool found() const { return matching.has_value(); }
};

/// LLP problem behind solve_superstable. Constraints beyond RegretLE and
/// LowerBound throw TiesUnsupportedForConstraint.
LatticeProblem make_superstable_problem(const PreferenceProfile& profile, const ConstraintPoset& poset);

TiesResult solve_superstable(const PreferenceProfile& profile, std::span<const Constraint> constraints = {},
                             const SolveOptions& options = {}, const StepObserver& observer = {});

/// Critical-set loop: while Y(G) has no perfect matching, advance every
/// man of the critical set; a critical man with no further tie-group means
/// no strongly stable matching. Returns the lexicographically smallest
/// perfect matching of the final Y(G).
TiesResult solve_strongly_stable(const PreferenceProfile& profile);

ProposalVector meet(std::span<const Rank> a, std::span<const Rank> b);
ProposalVector join(std::span<const Rank> a, std::span<const Rank> b);

}  // namespace llpmatch
