#include "llpmatch/marriage.hpp"

#include <algorithm>
#include <memory>
#include <random>

#include "llpmatch/errors.hpp"

namespace llpmatch {

const char* to_string(ForbiddenReason reason) {
  switch (reason) {
    case ForbiddenReason::None:
      return "none";
    case ForbiddenReason::BlockedByWoman:
      return "blocked-by-woman";
    case ForbiddenReason::ConstraintViolation:
      return "constraint-violation";
  }
  return "unknown";
}

namespace {

bool blocked_by_woman(std::span<const Rank> g, AgentId j, const PreferenceProfile& profile, ScanMode mode) {
  const AgentId z = profile.man_choice(j, g[j]);
  const Rank mine = profile.woman_rank(z, j);
  for (AgentId i = 0; i < profile.size(); ++i) {
    if (i == j || profile.woman_rank(z, i) >= mine) continue;
    if (mode == ScanMode::RankLookup) {
      if (profile.man_rank(i, z) <= g[i]) return true;
      continue;
    }
    for (Rank k = 1; k <= g[i]; ++k) {
      if (profile.man_choice(i, k) == z) return true;
    }
  }
  return false;
}

ProposalVector to_ranks(StateView view) { return ProposalVector(view.begin(), view.end()); }

void require_strict(const PreferenceProfile& profile) {
  if (!profile.strict()) {
    throw ValidationError("this solver needs strict preferences; use the superstable or strong solver for ties");
  }
}

}  // namespace

Verdict forbidden_marriage(std::span<const Rank> g, AgentId j, const PreferenceProfile& profile,
                           const ConstraintPoset& poset, ScanMode mode) {
  if (blocked_by_woman(g, j, profile, mode)) return {true, ForbiddenReason::BlockedByWoman};
  if (lags(g, poset, j) || poset.forbids(j, profile.man_choice(j, g[j]))) {
    return {true, ForbiddenReason::ConstraintViolation};
  }
  return {};
}

LatticeProblem make_marriage_problem(const PreferenceProfile& profile, const ConstraintPoset& poset, ScanMode mode) {
  require_strict(profile);
  auto shared_profile = std::make_shared<const PreferenceProfile>(profile);
  auto shared_poset = std::make_shared<const ConstraintPoset>(poset);
  auto verdict = [shared_profile, shared_poset, mode](StateView view, std::size_t j) {
    const auto g = to_ranks(view);
    return forbidden_marriage(g, static_cast<AgentId>(j), *shared_profile, *shared_poset, mode);
  };

  LatticeProblem problem;
  const auto floor = poset.initial_vector();
  problem.initial.assign(floor.begin(), floor.end());
  problem.top.assign(static_cast<std::size_t>(profile.size()), profile.size());
  problem.forbidden = [verdict](StateView g, std::size_t j) { return verdict(g, j).forbidden; };
  problem.advance = [](StateView g, std::size_t j) { return g[j] + 1; };
  // Woman-side conflicts are resolved before constraint repairs.
  problem.priority = [verdict](StateView g, std::size_t j) {
    return verdict(g, j).reason == ForbiddenReason::BlockedByWoman ? 0 : 1;
  };
  return problem;
}

MarriageResult solve_constrained(const PreferenceProfile& profile, const ConstraintPoset& poset,
                                 const MarriageOptions& options) {
  const auto problem = make_marriage_problem(profile, poset, options.scan);

  MarriageResult result;
  StepObserver observer;
  if (options.record_trace) {
    observer = [&](const StepRecord& step) {
      TraceRecord record;
      record.step = step.step;
      const auto before = to_ranks(step.before);
      for (auto j : step.forbidden) record.forbidden.push_back(static_cast<AgentId>(j));
      for (auto j : step.advanced) {
        record.advanced.push_back(static_cast<AgentId>(j));
        record.reasons.push_back(
            forbidden_marriage(before, static_cast<AgentId>(j), profile, poset, options.scan).reason);
      }
      record.g_after = to_ranks(step.after);
      result.trace.push_back(std::move(record));
    };
  }

  const auto outcome = solve_lattice(problem, options.schedule, observer);
  result.ranks = to_ranks(outcome.state);
  if (!outcome.feasible()) {
    result.exhausted_man = static_cast<AgentId>(*outcome.exhausted);
    return result;
  }
  Matching matching(profile.size());
  for (AgentId m = 0; m < profile.size(); ++m) matching.assign(m, profile.man_choice(m, result.ranks[m]));
  if (!matching.is_perfect()) {
    throw MalformedProblem("fixpoint does not encode a matching: " + matching.to_string());
  }
  result.matching = std::move(matching);
  return result;
}

MarriageResult solve_constrained(const PreferenceProfile& profile, std::span<const Constraint> constraints,
                                 const MarriageOptions& options) {
  require_strict(profile);
  return solve_constrained(profile, compile_constraints(profile, constraints), options);
}

MarriageResult solve_stable(const PreferenceProfile& profile, const MarriageOptions& options) {
  require_strict(profile);
  return solve_constrained(profile, ConstraintPoset(profile.size()), options);
}

PreferenceProfile break_ties(const PreferenceProfile& profile, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto flatten = [&rng](const PreferenceList& list) {
    PreferenceList out;
    for (TieGroup group : list) {
      std::shuffle(group.begin(), group.end(), rng);
      for (AgentId a : group) out.push_back({a});
    }
    return out;
  };
  std::vector<PreferenceList> men;
  std::vector<PreferenceList> women;
  for (AgentId a = 0; a < profile.size(); ++a) men.push_back(flatten(profile.man_list(a)));
  for (AgentId a = 0; a < profile.size(); ++a) women.push_back(flatten(profile.woman_list(a)));
  return PreferenceProfile(std::move(men), std::move(women));
}

MarriageResult solve_weak(const PreferenceProfile& profile, std::uint64_t seed, const MarriageOptions& options) {
  const auto strict = break_ties(profile, seed);
  auto result = solve_stable(strict, options);
  if (result.matching) result.ranks = rank_vector(profile, *result.matching);
  return result;
}

}  // namespace llpmatch
