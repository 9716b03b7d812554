#include <gtest/gtest.h>

#include "oracle.hpp"
#include "ppaa/distribution.hpp"
#include "ppaa/equivalence.hpp"
#include "ppaa/paa.hpp"
#include "support.hpp"

using namespace ppaa;
using testing_support::atom;
using testing_support::ground_text;

TEST(InducedProgram, AddsChosenFacts) {
  auto gp = ground_text(testing_support::kGated);
  auto with_b = induced_program(TotalChoice{{atom("b")}}, gp);
  auto expected = parse_program("a :- b, not c. b. d :- not d.").rules;
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(with_b, expected);
  EXPECT_EQ(induced_program(TotalChoice{}, gp), gp.rules);

  auto bare = ground_text("0.3::b.");
  EXPECT_EQ(induced_program(TotalChoice{{atom("b")}}, bare), parse_program("b.").rules);
}

TEST(ProgramProbability, ProductFormula) {
  auto gp = ground_text(testing_support::kGated);
  EXPECT_EQ(program_probability(TotalChoice{{atom("b")}}, gp.pfacts), Rational(3, 10));
  EXPECT_EQ(program_probability(TotalChoice{}, gp.pfacts), Rational(7, 10));
  EXPECT_EQ(program_probability(TotalChoice{}, {}), Rational(1));
}

TEST(SuccessProbability, GatedProgram) {
  auto gp = ground_text(testing_support::kGated);
  EXPECT_EQ(success_probability(atom("a"), gp), Rational(3, 10));
  EXPECT_EQ(success_probability(atom("zz"), gp), Rational(0));
  EXPECT_EQ(success_probability(atom("b"), gp), Rational(3, 10));
  EXPECT_EQ(success_probability(atom("d"), gp), Rational(0));  // undefined everywhere
}

TEST(SuccessProbability, ThreeValuedChoicesAreCounted) {
  DistributionEngine e(ground_text(testing_support::kGated));
  EXPECT_EQ(e.three_valued_choices(), 2u);
  EXPECT_EQ(e.choices().size(), 2u);
}

TEST(SuccessProbability, ZeroProbabilityChoicesAreSkipped) {
  DistributionEngine e(ground_text("1::f. 0::g. h :- f, not g."));
  ASSERT_EQ(e.choices().size(), 1u);
  EXPECT_EQ(e.success_probability(atom("h")), Rational(1));
}

TEST(SuccessProbability, WorldCap) {
  EngineOptions opts;
  opts.max_worlds = 2;
  EXPECT_THROW(DistributionEngine(ground_text("0.5::x. 0.5::y."), opts), CapExceeded);
}

TEST(SuccessProbability, ReachabilityFixture) {
  auto gp = ground(parse_program(testing_support::slurp(testing_support::fixture("reachability.pl"))));
  DistributionEngine e(gp);
  for (const auto& q : gp.herbrand_base) {
    auto ref = oracle::evaluate(gp, to_string(q), 1);
    EXPECT_EQ(e.success_probability(q), ref.p_success) << to_string(q);
  }
}

// Total choices and worlds are the same subsets with the same mass, and both
// sum to one.
TEST(TotalChoices, BijectWithWorlds) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto gp = ground(random_program(seed));
    Rational total(0);
    for (WorldMask m = 0; m < (WorldMask{1} << gp.pfacts.size()); ++m) {
      auto tc = total_choice_of(m, gp.pfacts);
      auto w = world_of(m, gp.pfacts);
      EXPECT_EQ(tc.included_facts, w.chosen);
      EXPECT_EQ(program_probability(tc, gp.pfacts), world_probability(w, gp.pfacts));
      EXPECT_EQ(mask_of(w, gp.pfacts), m);
      total += program_probability(tc, gp.pfacts);
    }
    EXPECT_EQ(total, Rational(1)) << "seed " << seed;
  }
}

TEST(SuccessProbability, AgreesWithOracleOnGeneratedPrograms) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto gp = ground(random_program(seed));
    DistributionEngine e(gp);
    for (const auto& q : gp.herbrand_base)
      EXPECT_EQ(e.success_probability(q), oracle::evaluate(gp, to_string(q), 0).p_success) << "seed " << seed;
  }
}
