#include <gtest/gtest.h>

#include <algorithm>

#include "llpmatch/errors.hpp"
#include "llpmatch/poset.hpp"
#include "test_support.hpp"

using namespace llpmatch;

TEST(Poset, RegretConstraintEmitsOneEdgePerRank) {
  const auto inst = support::fixture("fig5_regret.smp");
  const auto poset = compile_constraints(inst.profile, inst.constraints);
  std::vector<PrecedenceEdge> expected;
  for (Rank r = 1; r <= 4; ++r) expected.push_back({{0, r}, {1, r}});
  auto edges = poset.edges();
  std::sort(edges.begin(), edges.end());
  EXPECT_EQ(edges, expected);
  EXPECT_EQ(poset.prerequisites(1, 2).size(), 1u);
  EXPECT_EQ(poset.prerequisites(1, 2).front(), (ProposalEvent{0, 2}));
  EXPECT_TRUE(poset.prerequisites(0, 2).empty());
  EXPECT_EQ(poset.outgoing(0).size(), 4u);
  EXPECT_FALSE(poset.empty());
}

TEST(Poset, EmptyConstraintListGivesEmptyPoset) {
  const auto inst = support::fixture("fig5.smp");
  const auto poset = compile_constraints(inst.profile, inst.constraints);
  EXPECT_TRUE(poset.empty());
  EXPECT_EQ(poset.initial_vector(), (ProposalVector{1, 1, 1, 1}));
}

TEST(Poset, DuplicateConstraintsDeduplicate) {
  const auto inst = support::fixture("fig5.smp");
  const std::vector<Constraint> cs{RegretLE{1, 0}, RegretLE{1, 0}};
  EXPECT_EQ(compile_constraints(inst.profile, cs).edges().size(), 4u);
}

TEST(Poset, MutualRegretIsAcyclic) {
  // regret(1) <= regret(2) and regret(2) <= regret(1): equal regrets.
  const auto inst = support::fixture("fig5.smp");
  const std::vector<Constraint> cs{RegretLE{0, 1}, RegretLE{1, 0}};
  EXPECT_THROW(compile_constraints(inst.profile, cs), CyclicConstraints);
}

TEST(Poset, RawEdgeCycleRejected) {
  const auto inst = support::fixture("fig5.smp");
  const std::vector<Constraint> cs{RawEdge{0, 2, 1, 1}, RawEdge{1, 1, 0, 1}};
  EXPECT_THROW(compile_constraints(inst.profile, cs), CyclicConstraints);
  const std::vector<Constraint> backwards{RawEdge{0, 3, 0, 2}};
  EXPECT_THROW(compile_constraints(inst.profile, backwards), CyclicConstraints);
  const std::vector<Constraint> forwards{RawEdge{0, 1, 0, 3}};
  EXPECT_TRUE(compile_constraints(inst.profile, forwards).edges().empty());
}

TEST(Poset, ForbidAndFloor) {
  const auto inst = support::fixture("fig5.smp");
  const std::vector<Constraint> cs{ForbiddenPair{2, 0}, LowerBound{{2, 1, 0, 3}}};
  const auto poset = compile_constraints(inst.profile, cs);
  EXPECT_TRUE(poset.forbids(2, 0));
  EXPECT_FALSE(poset.forbids(0, 2));
  EXPECT_EQ(poset.initial_vector(), (ProposalVector{2, 1, 1, 3}));
  EXPECT_TRUE(poset.edges().empty());
  EXPECT_FALSE(poset.empty());
}

TEST(Poset, TiesRejectForbidAndRawEdge) {
  const auto inst = support::fixture("irving.smp");
  const std::vector<Constraint> forbid{ForbiddenPair{0, 0}};
  const std::vector<Constraint> edge{RawEdge{0, 1, 1, 1}};
  const std::vector<Constraint> regret{RegretLE{0, 1}};
  EXPECT_THROW(compile_constraints(inst.profile, forbid), TiesUnsupportedForConstraint);
  EXPECT_THROW(compile_constraints(inst.profile, edge), TiesUnsupportedForConstraint);
  // One edge per tie-group of the lower man.
  EXPECT_EQ(compile_constraints(inst.profile, regret).edges().size(), 2u);
}

TEST(Poset, ForcedPairForbidsEveryOtherWoman) {
  const auto inst = support::fixture("fig5.smp");
  const auto cs = forced_pair(inst.profile, 1, 2);
  const auto poset = compile_constraints(inst.profile, cs);
  for (AgentId w = 0; w < 4; ++w) EXPECT_EQ(poset.forbids(1, w), w != 2);
}

TEST(Poset, ConsistencyExamples) {
  const auto inst = support::fixture("fig5_regret.smp");
  const auto poset = compile_constraints(inst.profile, inst.constraints);
  const ProposalVector ok{1, 1, 1, 1};
  const ProposalVector ahead{1, 2, 1, 1};  // man 2 at rank 2 before man 1
  const ProposalVector caught_up{2, 2, 2, 1};
  EXPECT_TRUE(is_consistent(ok, poset));
  EXPECT_FALSE(is_consistent(ahead, poset));
  EXPECT_TRUE(is_consistent(caught_up, poset));
  EXPECT_TRUE(lags(ahead, poset, 0));
  EXPECT_FALSE(lags(ahead, poset, 1));
  EXPECT_FALSE(lags(caught_up, poset, 0));
}
