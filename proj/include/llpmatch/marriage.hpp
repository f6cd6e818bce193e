#pragma once

// Shared-memory LLP solvers for stable marriage without ties, optionally
// under external constraints. Each man's component is the rank of the
// woman he currently proposes to; the least vector where no man is
// forbidden is the man-optimal (constrained) stable matching.

#include <optional>
#include <span>
#include <vector>

#include "llpmatch/lattice.hpp"
#include "llpmatch/poset.hpp"
#include "llpmatch/profile.hpp"

namespace llpmatch {

enum class ForbiddenReason { None, BlockedByWoman, ConstraintViolation };

const char* to_string(ForbiddenReason reason);

/// How the woman-side disjunct is evaluated. Reference scans every
/// proposal k <= g[i] of every other man; RankLookup asks whether
/// mrank[i][z] <= g[i]. Both must agree.
enum class ScanMode { Reference, RankLookup };

struct Verdict {
  bool forbidden = false;
  ForbiddenReason reason = ForbiddenReason::None;
  explicit operator bool() const { return forbidden; }
};

/// forbidden(G, j, B_marriage) for a strict profile. BlockedByWoman wins
/// when both disjuncts hold.
Verdict forbidden_marriage(std::span<const Rank> g, AgentId j, const PreferenceProfile& profile,
                           const ConstraintPoset& poset, ScanMode mode = ScanMode::Reference);

struct TraceRecord {
  std::size_t step = 0;
  std::vector<AgentId> forbidden;
  std::vector<AgentId> advanced;
  std::vector<ForbiddenReason> reasons;  // parallel to `advanced`
  ProposalVector g_after;
};

struct MarriageResult {
  std::optional<Matching> matching;
  /// Final proposal vector, or the vector reached when a man ran out.
  ProposalVector ranks;
  /// Man who had to advance past his last choice.
  std::optional<AgentId> exhausted_man;
  std::vector<TraceRecord> trace;

  bool found() const { return matching.has_value(); }
};

struct MarriageOptions {
  SolveOptions schedule{};
  ScanMode scan = ScanMode::Reference;
  bool record_trace = false;
};

/// The LLP problem instance behind solve_constrained, exposed for engine
/// property tests. Requires a strict profile.
LatticeProblem make_marriage_problem(const PreferenceProfile& profile, const ConstraintPoset& poset,
                                     ScanMode mode = ScanMode::Reference);

/// Man-optimal stable matching. Throws ValidationError on profiles with ties.
MarriageResult solve_stable(const PreferenceProfile& profile, const MarriageOptions& options = {});

/// Man-optimal constrained stable matching, or no matching with the man
/// who ran out named in `exhausted_man`.
MarriageResult solve_constrained(const PreferenceProfile& profile, std::span<const Constraint> constraints,
                                 const MarriageOptions& options = {});

MarriageResult solve_constrained(const PreferenceProfile& profile, const ConstraintPoset& poset,
                                 const MarriageOptions& options = {});

/// Breaks every tie by a seeded shuffle, yielding a strict profile.
PreferenceProfile break_ties(const PreferenceProfile& profile, std::uint64_t seed);

/// Weakly stable matching: seeded tie-break followed by solve_stable.
MarriageResult solve_weak(const PreferenceProfile& profile, std::uint64_t seed, const MarriageOptions& options = {});

}  // namespace llpmatch
