#include <gtest/gtest.h>

#include <random>

#include "llpmatch/errors.hpp"
#include "llpmatch/scheduling.hpp"
#include "test_support.hpp"

using namespace llpmatch;

TEST(JobScheduling, SingleJob) {
  EXPECT_EQ(solve_lattice(make_job_scheduling({5}, {{}})).state, (StateVector{5}));
}

TEST(JobScheduling, TwoJobChain) {
  EXPECT_EQ(solve_lattice(make_job_scheduling({2, 3}, {{}, {0}})).state, (StateVector{2, 5}));
}

TEST(JobScheduling, UnitChainOfThree) {
  const auto p = make_job_scheduling({1, 1, 1}, {{}, {0}, {0, 1}});
  EXPECT_EQ(p.initial, (StateVector{1, 1, 1}));
  EXPECT_EQ(solve_lattice(p).state, (StateVector{1, 2, 3}));
}

TEST(JobScheduling, CycleRejected) {
  EXPECT_THROW(make_job_scheduling({1, 1}, {{1}, {0}}), CyclicPrerequisites);
  EXPECT_THROW(make_job_scheduling({1}, {{0}}), CyclicPrerequisites);
}

TEST(JobScheduling, BadInputRejected) {
  EXPECT_THROW(make_job_scheduling({-1}, {{}}), ValidationError);
  EXPECT_THROW(make_job_scheduling({1}, {{3}}), ValidationError);
  EXPECT_THROW(make_job_scheduling({1, 2}, {{}}), ValidationError);
}

TEST(JobScheduling, MatchesLongestPathOracle) {
  std::mt19937_64 rng(101);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 1 + round % 10;
    const auto jobs = support::random_jobs(n, rng);
    const auto result = solve_lattice(make_job_scheduling(jobs.durations, jobs.pre));
    ASSERT_TRUE(result.feasible());
    EXPECT_EQ(result.state, support::longest_path_oracle(jobs)) << "round " << round;
  }
}

// Lowering any single component of the fixpoint breaks the predicate.
TEST(JobScheduling, FixpointIsTight) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 50; ++round) {
    const auto jobs = support::random_jobs(8, rng);
    const auto p = make_job_scheduling(jobs.durations, jobs.pre);
    const auto g = solve_lattice(p).state;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (g[j] == jobs.durations[j]) continue;
      auto lower = g;
      --lower[j];
      EXPECT_FALSE(forbidden_indices(p, lower).empty());
    }
  }
}

// forbidden(G, j) and H >= G with H[j] == G[j] imply forbidden(H, j).
TEST(JobScheduling, ForbiddenIsMonotoneSafe) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<Value> bump(0, 6);
  for (int round = 0; round < 200; ++round) {
    const auto jobs = support::random_jobs(7, rng);
    const auto p = make_job_scheduling(jobs.durations, jobs.pre);
    StateVector g = p.initial;
    for (auto& v : g) v += bump(rng);
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (!p.forbidden(g, j)) continue;
      auto h = g;
      for (std::size_t k = 0; k < h.size(); ++k) {
        if (k != j) h[k] += bump(rng);
      }
      EXPECT_TRUE(p.forbidden(h, j));
      EXPECT_GT(p.advance(g, j), g[j]);
    }
  }
}

TEST(ShortestPath, SingleSource) {
  EXPECT_EQ(solve_lattice(make_shortest_path(0, {{}})).state, (StateVector{0}));
}

TEST(ShortestPath, TwoNodes) {
  EXPECT_EQ(solve_lattice(make_shortest_path(0, {{}, {{0, 7}}})).state, (StateVector{0, 7}));
}

TEST(ShortestPath, UnreachableKeepsSentinel) {
  const auto result = solve_lattice(make_shortest_path(0, {{}, {{0, 2}}, {}}));
  EXPECT_EQ(result.state, (StateVector{0, 2, kUnreachable}));
}

TEST(ShortestPath, PrefersCheaperDetour) {
  // 0 -> 1 (10), 0 -> 2 (1), 2 -> 1 (2)
  const auto result = solve_lattice(make_shortest_path(0, {{}, {{0, 10}, {2, 2}}, {{0, 1}}}));
  EXPECT_EQ(result.state, (StateVector{0, 3, 1}));
}

TEST(ShortestPath, CyclesAreFine) {
  const auto result = solve_lattice(make_shortest_path(1, {{{1, 4}}, {{0, 1}}}));
  EXPECT_EQ(result.state, (StateVector{4, 0}));
}

TEST(ShortestPath, BadInputRejected) {
  EXPECT_THROW(make_shortest_path(2, {{}, {}}), ValidationError);
  EXPECT_THROW(make_shortest_path(0, {{}, {{0, -1}}}), ValidationError);
  EXPECT_THROW(make_shortest_path(0, {{}, {{5, 1}}}), ValidationError);
}

TEST(ShortestPath, MatchesRelaxationOracle) {
  std::mt19937_64 rng(202);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 1 + round % 10;
    const auto graph = support::random_graph(n, rng);
    const auto result = solve_lattice(make_shortest_path(graph.source, graph.pre));
    ASSERT_TRUE(result.feasible());
    EXPECT_EQ(result.state, support::relaxation_oracle(graph)) << "round " << round;
  }
}

TEST(ShortestPath, SchedulesAgree) {
  std::mt19937_64 rng(303);
  for (int round = 0; round < 50; ++round) {
    const auto graph = support::random_graph(9, rng);
    const auto p = make_shortest_path(graph.source, graph.pre);
    const auto reference = solve_lattice(p).state;
    for (auto schedule : {Schedule::Parallel, Schedule::Stale, Schedule::Threaded}) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        EXPECT_EQ(solve_lattice(p, {schedule, seed, 3, 3}).state, reference);
      }
    }
  }
}

// Descending contract: H <= G with H[j] == G[j] keeps j forbidden.
TEST(ShortestPath, ForbiddenIsMonotoneSafe) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<Value> value(0, 40);
  for (int round = 0; round < 200; ++round) {
    const auto graph = support::random_graph(6, rng);
    const auto p = make_shortest_path(graph.source, graph.pre);
    StateVector g(6);
    for (auto& v : g) v = value(rng);
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (!p.forbidden(g, j)) continue;
      auto h = g;
      for (std::size_t k = 0; k < h.size(); ++k) {
        if (k != j) h[k] = std::uniform_int_distribution<Value>(0, h[k])(rng);
      }
      EXPECT_TRUE(p.forbidden(h, j));
      EXPECT_LT(p.advance(g, j), g[j]);
    }
  }
}
