#include <gtest/gtest.h>

#include "llpmatch/errors.hpp"
#include "llpmatch/generator.hpp"
#include "llpmatch/instance_io.hpp"
#include "llpmatch/profile.hpp"
#include "test_support.hpp"

using namespace llpmatch;

TEST(Profile, Fig5RankTables) {
  const auto inst = support::fixture("fig5.smp");
  const auto& p = inst.profile;
  ASSERT_EQ(p.size(), 4);
  EXPECT_TRUE(p.strict());
  // Man 1 ranks w4, w1, w2, w3.
  EXPECT_EQ(p.man_rank(0, 3), 1);
  EXPECT_EQ(p.man_rank(0, 0), 2);
  EXPECT_EQ(p.man_rank(0, 1), 3);
  EXPECT_EQ(p.man_rank(0, 2), 4);
  EXPECT_EQ(p.man_choice(0, 1), 3);
  EXPECT_EQ(p.woman_rank(0, 3), 1);
  EXPECT_EQ(p.woman_rank(3, 1), 4);
  EXPECT_EQ(p.group_count(2), 4);
  EXPECT_TRUE(inst.constraints.empty());
}

TEST(Profile, TiedRanksShareAGroup) {
  const auto inst = support::fixture("irving.smp");
  const auto& p = inst.profile;
  EXPECT_FALSE(p.strict());
  EXPECT_EQ(p.group_count(1), 1);
  EXPECT_EQ(p.man_rank(1, 0), 1);
  EXPECT_EQ(p.man_rank(1, 1), 1);
  EXPECT_EQ(p.man_group(1, 1).size(), 2u);
}

TEST(Profile, TrivialInstance) {
  const auto inst = support::fixture("tiny1.smp");
  EXPECT_EQ(inst.profile.size(), 1);
  EXPECT_EQ(inst.profile.man_rank(0, 0), 1);
}

TEST(Profile, RejectsIncompleteOrDuplicateLists) {
  EXPECT_THROW(PreferenceProfile({{{0}, {0}}, {{0}, {1}}}, {{{0}, {1}}, {{0}, {1}}}), ValidationError);
  EXPECT_THROW(PreferenceProfile({{{0}}, {{0}, {1}}}, {{{0}, {1}}, {{0}, {1}}}), ValidationError);
  EXPECT_THROW(PreferenceProfile({{{0}, {2}}, {{0}, {1}}}, {{{0}, {1}}, {{0}, {1}}}), ValidationError);
  EXPECT_THROW(PreferenceProfile({{{0}, {1}}}, {{{0}, {1}}, {{0}, {1}}}), ValidationError);
  EXPECT_THROW(PreferenceProfile({{{0}, {}, {1}}, {{0}, {1}}}, {{{0}, {1}}, {{0}, {1}}}), ValidationError);
}

TEST(Matching, FormattingAndPerfection) {
  Matching m(std::vector<AgentId>{3, 2, 0, 1});
  EXPECT_EQ(m.to_string(), "P1:w4 P2:w3 P3:w1 P4:w2");
  EXPECT_TRUE(m.is_perfect());
  EXPECT_EQ(m.husband(0), 2);
  Matching partial(2);
  EXPECT_FALSE(partial.is_perfect());
  partial.assign(0, 1);
  partial.assign(1, 1);
  EXPECT_FALSE(partial.is_perfect());
}

TEST(Matching, RankVector) {
  const auto inst = support::fixture("fig5.smp");
  Matching m(std::vector<AgentId>{3, 2, 0, 1});
  EXPECT_EQ(rank_vector(inst.profile, m), (ProposalVector{1, 2, 2, 1}));
}

TEST(Parser, ConstraintsAndComments) {
  const auto inst = parse_instance(
      "# header\n"
      "n 2\n"
      "w 2: 1 | 2\n"
      "m 1: 1 | 2   # trailing\n"
      "m 2: 2 | 1\n"
      "w 1: 2 1\n"
      "regret_le 2 1\n"
      "forbid 1 2\n"
      "floor 1 2\n"
      "edge 1 1 2 2\n");
  ASSERT_EQ(inst.constraints.size(), 4u);
  EXPECT_EQ(inst.constraints[0], Constraint(RegretLE{1, 0}));
  EXPECT_EQ(inst.constraints[1], Constraint(ForbiddenPair{0, 1}));
  EXPECT_EQ(inst.constraints[2], Constraint(LowerBound{{1, 2}}));
  EXPECT_EQ(inst.constraints[3], Constraint((RawEdge{0, 1, 1, 2})));
  EXPECT_EQ(inst.profile.woman_list(0), (PreferenceList{{1, 0}}));
}

TEST(Parser, SyntaxErrorsCarryLineNumbers) {
  try {
    parse_instance("n 1\nm 1: 1\nw 1 1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_instance("m 1: 1\n"), ParseError);
  EXPECT_THROW(parse_instance(""), ParseError);
  EXPECT_THROW(parse_instance("n 1\nm 1: x\nw 1: 1\n"), ParseError);
  EXPECT_THROW(parse_instance("n 1\nm 1: 1 |\nw 1: 1\n"), ParseError);
  EXPECT_THROW(parse_instance("n 1\nm 1: 1\nw 1: 1\nbogus 1\n"), ParseError);
  EXPECT_THROW(parse_instance("n 2\nm 1: 1|2\nm 2: 1|2\nw 1: 1|2\nw 2: 1|2\nregret_le 1\n"), ParseError);
}

TEST(Parser, SemanticErrorsAreValidationErrors) {
  EXPECT_THROW(parse_instance("n 2\nm 1: 1 | 1\nm 2: 1|2\nw 1: 1|2\nw 2: 1|2\n"), ValidationError);
  EXPECT_THROW(parse_instance("n 1\nm 1: 1\nm 1: 1\nw 1: 1\n"), ValidationError);
  EXPECT_THROW(parse_instance("n 1\nm 1: 1\n"), ValidationError);
  EXPECT_THROW(parse_instance("n 1\nm 2: 1\nw 1: 1\n"), ValidationError);
  EXPECT_THROW(parse_instance("n 1\nm 1: 1\nw 1: 1\nforbid 1 2\n"), ValidationError);
  EXPECT_THROW(parse_instance("n 0\n"), ValidationError);
}

TEST(Parser, LoadMissingFile) {
  EXPECT_THROW(load_instance("/nonexistent/instance.smp"), Error);
}

TEST(Serializer, CanonicalText) {
  const auto inst = support::fixture("fig5_regret.smp");
  const auto text = serialize_instance(inst);
  EXPECT_NE(text.find("m 1: 4 | 1 | 2 | 3\n"), std::string::npos);
  EXPECT_NE(text.find("regret_le 2 1\n"), std::string::npos);
  EXPECT_EQ(parse_instance(text), inst);
}

TEST(Serializer, RoundTripsGeneratedInstances) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GeneratorOptions options;
    options.n = 1 + static_cast<int>(seed % 7);
    options.tie_density = (seed % 3) * 0.3;
    options.constraint_count = static_cast<int>(seed % 4);
    options.seed = seed;
    const auto inst = generate_instance(options);
    const auto text = serialize_instance(inst);
    const auto back = parse_instance(text);
    EXPECT_EQ(back, inst) << text;
    EXPECT_EQ(serialize_instance(back), text);
  }
}
