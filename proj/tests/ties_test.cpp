#include <gtest/gtest.h>

#include <random>

#include "llpmatch/errors.hpp"
#include "llpmatch/generator.hpp"
#include "llpmatch/instance_io.hpp"
#include "llpmatch/oracle.hpp"
#include "llpmatch/ties.hpp"
#include "test_support.hpp"

using namespace llpmatch;

namespace {

Instance random_tied(std::uint64_t seed, int n, double density = 0.4) {
  GeneratorOptions options;
  options.n = n;
  options.tie_density = density;
  options.seed = seed;
  return generate_instance(options);
}

}  // namespace

TEST(ProposalGraph, IrvingStart) {
  const auto inst = support::fixture("irving.smp");
  const ProposalVector g{1, 1};
  const auto y = build_proposal_graph(inst.profile, g);
  EXPECT_TRUE(y.women_of(0).empty());
  EXPECT_EQ(y.women_of(1), (std::vector<AgentId>{0, 1}));
  EXPECT_EQ(best_received(inst.profile, g), (std::vector<Rank>{1, 1}));
  const auto report = deficiency_report(y);
  EXPECT_EQ(report.critical_set, (std::vector<AgentId>{0}));
}

TEST(ProposalGraph, WomanWithoutProposalsIsIsolated) {
  const auto inst = support::fixture("fig5.smp");
  const ProposalVector g{1, 1, 1, 1};
  const auto y = build_proposal_graph(inst.profile, g);
  // Nobody proposes to w1 at rank 1.
  EXPECT_EQ(best_received(inst.profile, g)[0], 0);
  EXPECT_EQ(y.woman_degrees()[0], 0);
  // w2 keeps only man 4 of her two proposers.
  EXPECT_TRUE(y.has_edge(3, 1));
  EXPECT_FALSE(y.has_edge(1, 1));
}

TEST(ProposalGraph, StableVectorGivesPerfectMatchingGraph) {
  const auto inst = support::fixture("fig5.smp");
  const ProposalVector g{1, 2, 2, 1};
  EXPECT_TRUE(is_perfect_matching_graph(build_proposal_graph(inst.profile, g)));
}

TEST(Superstable, IndifferentPairHasNone) {
  const auto inst = support::fixture("indiff2.smp");
  const auto result = solve_superstable(inst.profile);
  EXPECT_FALSE(result.found());
  EXPECT_TRUE(result.exhausted_man.has_value());
  EXPECT_TRUE(oracle::all_stable(inst.profile, {}, oracle::StabilityKind::Super).empty());
}

TEST(Superstable, StrictProfileMatchesClassic) {
  const auto inst = support::fixture("fig5.smp");
  const auto result = solve_superstable(inst.profile);
  ASSERT_TRUE(result.found());
  EXPECT_EQ(result.matching->to_string(), "P1:w4 P2:w3 P3:w1 P4:w2");
  const auto regret = support::fixture("fig5_regret.smp");
  EXPECT_EQ(solve_superstable(regret.profile, regret.constraints).matching->to_string(), "P1:w1 P2:w3 P3:w4 P4:w2");
}

TEST(Superstable, RejectsUnsupportedConstraints) {
  const auto inst = support::fixture("fig5.smp");
  const std::vector<Constraint> cs{ForbiddenPair{0, 0}};
  EXPECT_THROW(solve_superstable(inst.profile, cs), TiesUnsupportedForConstraint);
}

TEST(Superstable, MatchesOracleMinimum) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = random_tied(seed, 3 + static_cast<int>(seed % 3));
    const auto result = solve_superstable(inst.profile);
    const auto expected = oracle::minimum_stable(inst.profile, {}, oracle::StabilityKind::Super);
    EXPECT_EQ(result.matching, expected) << serialize_instance(inst);
    if (result.found()) {
      EXPECT_TRUE(oracle::classify(*result.matching, inst.profile).super_stable);
      EXPECT_EQ(result.ranks, oracle::oracle_rank_vector(inst.profile, *result.matching));
    }
  }
}

TEST(Superstable, RegretConstraintsMatchOracle) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    GeneratorOptions options;
    options.n = 3 + static_cast<int>(seed % 3);
    options.tie_density = 0.3;
    options.constraint_count = 1 + static_cast<int>(seed % 2);
    options.seed = seed + 5000;
    auto inst = generate_instance(options);
    std::erase_if(inst.constraints, [](const Constraint& c) { return !std::holds_alternative<RegretLE>(c); });
    const auto result = solve_superstable(inst.profile, inst.constraints);
    const auto expected = oracle::minimum_stable(inst.profile, inst.constraints, oracle::StabilityKind::Super);
    EXPECT_EQ(result.matching, expected) << serialize_instance(inst);
  }
}

TEST(Superstable, SchedulesAgree) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = random_tied(seed + 300, 6, 0.3);
    const auto reference = solve_superstable(inst.profile);
    for (auto schedule : {Schedule::Parallel, Schedule::Stale, Schedule::Threaded}) {
      const auto other = solve_superstable(inst.profile, {}, {schedule, seed, 3, 3});
      EXPECT_EQ(other.matching, reference.matching);
    }
  }
}

TEST(Superstable, ForbiddenIsMonotoneSafe) {
  std::mt19937_64 rng(9);
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const auto inst = random_tied(seed, 5, 0.4);
    const auto problem = make_superstable_problem(inst.profile, ConstraintPoset(5));
    for (int probe = 0; probe < 20; ++probe) {
      StateVector g(5);
      for (AgentId m = 0; m < 5; ++m) g[m] = std::uniform_int_distribution<Value>(1, inst.profile.group_count(m))(rng);
      for (std::size_t j = 0; j < 5; ++j) {
        if (!problem.forbidden(g, j)) continue;
        auto h = g;
        for (AgentId m = 0; m < 5; ++m) {
          if (static_cast<std::size_t>(m) != j) {
            h[m] = std::uniform_int_distribution<Value>(g[m], inst.profile.group_count(m))(rng);
          }
        }
        EXPECT_TRUE(problem.forbidden(h, j));
      }
    }
  }
}

TEST(Strong, IrvingHasNone) {
  const auto inst = support::fixture("irving.smp");
  const auto result = solve_strongly_stable(inst.profile);
  EXPECT_FALSE(result.found());
  EXPECT_EQ(result.exhausted_man, 0);
  EXPECT_TRUE(oracle::all_stable(inst.profile, {}, oracle::StabilityKind::Strong).empty());
}

TEST(Strong, IndifferentPairHasOne) {
  const auto inst = support::fixture("indiff2.smp");
  const auto result = solve_strongly_stable(inst.profile);
  ASSERT_TRUE(result.found());
  EXPECT_TRUE(oracle::classify(*result.matching, inst.profile).strongly_stable);
}

TEST(Strong, StrictProfileMatchesClassic) {
  const auto inst = support::fixture("fig5.smp");
  const auto result = solve_strongly_stable(inst.profile);
  ASSERT_TRUE(result.found());
  EXPECT_EQ(result.matching->to_string(), "P1:w4 P2:w3 P3:w1 P4:w2");
}

TEST(Strong, AgreesWithOracle) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = random_tied(seed + 7000, 3 + static_cast<int>(seed % 3));
    const auto result = solve_strongly_stable(inst.profile);
    const auto members = oracle::all_stable(inst.profile, {}, oracle::StabilityKind::Strong);
    EXPECT_EQ(result.found(), !members.empty()) << serialize_instance(inst);
    if (result.found()) {
      EXPECT_TRUE(oracle::classify(*result.matching, inst.profile).strongly_stable) << serialize_instance(inst);
    }
  }
}

TEST(Ties, MeetAndJoin) {
  const ProposalVector a{1, 3, 2};
  const ProposalVector b{2, 1, 2};
  EXPECT_EQ(meet(a, b), (ProposalVector{1, 1, 2}));
  EXPECT_EQ(join(a, b), (ProposalVector{2, 3, 2}));
}

// Superstable rank vectors are closed under meet and join.
TEST(Superstable, SublatticeClosure) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = random_tied(seed + 11000, 3 + static_cast<int>(seed % 3), 0.3);
    std::vector<ProposalVector> vectors;
    for (const auto& m : oracle::all_stable(inst.profile, {}, oracle::StabilityKind::Super)) {
      vectors.push_back(oracle::oracle_rank_vector(inst.profile, m));
    }
    auto is_member = [&](const ProposalVector& v) {
      return std::find(vectors.begin(), vectors.end(), v) != vectors.end();
    };
    for (const auto& a : vectors) {
      for (const auto& b : vectors) {
        EXPECT_TRUE(is_member(meet(a, b)));
        EXPECT_TRUE(is_member(join(a, b)));
      }
    }
  }
}
