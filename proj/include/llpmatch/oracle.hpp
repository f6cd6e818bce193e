#pragma once

// Brute-force ground truth over all n! perfect matchings. Deliberately
// shares no rank or blocking-pair code with the solvers: ranks are rebuilt
// here from the raw preference lists and every condition is a direct scan.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "llpmatch/profile.hpp"

namespace llpmatch::oracle {

inline constexpr int kMaxAgents = 8;

/// Calls `visit` on every perfect matching of size n in lexicographic order
/// of the wife vector. Throws TooLarge above kMaxAgents.
void for_each_matching(int n, const std::function<void(const Matching&)>& visit);

std::vector<Matching> enumerate_matchings(int n);

struct StabilityClass {
  bool classic_stable = false;  ///< strict profile and no strictly blocking pair
  bool weakly_stable = false;
  bool super_stable = false;
  bool strongly_stable = false;
  bool satisfies_constraints = false;
};

enum class StabilityKind { Classic, Weak, Super, Strong };

const char* to_string(StabilityKind kind);

StabilityClass classify(const Matching& matching, const PreferenceProfile& profile,
                        std::span<const Constraint> constraints = {});

/// Matchings of the requested kind that satisfy every constraint.
std::vector<Matching> all_stable(const PreferenceProfile& profile, std::span<const Constraint> constraints,
                                 StabilityKind kind);

/// Member whose man-rank vector is the componentwise minimum, or nullopt
/// when the class is empty. Throws LatticeViolation when members exist but
/// none is componentwise minimal.
std::optional<Matching> minimum_stable(const PreferenceProfile& profile, std::span<const Constraint> constraints,
                                       StabilityKind kind);

/// Man-side rank vector computed by the oracle's own rank tables.
std::vector<int> oracle_rank_vector(const PreferenceProfile& profile, const Matching& matching);

}  // namespace llpmatch::oracle
