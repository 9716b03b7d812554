#include <gtest/gtest.h>

#include "oracle.hpp"
#include "ppaa/equivalence.hpp"
#include "ppaa/wfm.hpp"
#include "support.hpp"

using namespace ppaa;
using testing_support::atom;
using testing_support::ground_text;

namespace {

std::vector<Atom> atoms(std::initializer_list<const char*> names) {
  std::vector<Atom> out;
  for (auto n : names) out.push_back(atom(n));
  return out;
}

ThreeValuedModel wfm_of(std::string_view text, std::vector<Atom> base) {
  auto rules = parse_program(text).rules;
  return well_founded_model(rules, base);
}

}  // namespace

TEST(WellFounded, WithoutTheFact) {
  auto m = wfm_of("a :- b, not c. d :- not d.", atoms({"a", "b", "c", "d"}));
  EXPECT_TRUE(m.true_atoms.empty());
  EXPECT_EQ(m.false_atoms, atoms({"a", "b", "c"}));
  EXPECT_EQ(m.undefined_atoms, atoms({"d"}));
  EXPECT_FALSE(m.two_valued());
}

TEST(WellFounded, WithTheFact) {
  auto m = wfm_of("a :- b, not c. b. d :- not d.", atoms({"a", "b", "c", "d"}));
  EXPECT_EQ(m.true_atoms, atoms({"a", "b"}));
  EXPECT_EQ(m.false_atoms, atoms({"c"}));
  EXPECT_EQ(m.undefined_atoms, atoms({"d"}));
}

TEST(WellFounded, NoRules) {
  auto m = well_founded_model({}, atoms({"x"}));
  EXPECT_TRUE(m.true_atoms.empty());
  EXPECT_EQ(m.false_atoms, atoms({"x"}));
  EXPECT_TRUE(m.undefined_atoms.empty());
}

TEST(WellFounded, EvenLoopIsUndefined) {
  auto m = wfm_of("p :- not q. q :- not p.", atoms({"p", "q"}));
  EXPECT_EQ(m.undefined_atoms, atoms({"p", "q"}));
}

TEST(WellFounded, PositiveLoopIsFalse) {
  auto m = wfm_of("p :- q. q :- p.", atoms({"p", "q"}));
  EXPECT_EQ(m.false_atoms, atoms({"p", "q"}));
}

TEST(LeastModel, Examples) {
  EXPECT_EQ(least_model(parse_program("b.").rules, atoms({"b"})), atoms({"b"}));
  EXPECT_EQ(least_model(parse_program("a :- b. b.").rules, atoms({"a", "b"})), atoms({"a", "b"}));
  EXPECT_TRUE(least_model(parse_program("a :- b.").rules, atoms({"a", "b"})).empty());
}

TEST(StableModels, Examples) {
  EXPECT_TRUE(stable_models(parse_program(testing_support::kOddLoop).rules, atoms({"a", "b", "c", "d"})).empty());
  auto one = stable_models(parse_program("b.").rules, atoms({"b"}));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].true_atoms, atoms({"b"}));
  EXPECT_TRUE(stable_models(parse_program("d :- not d.").rules, atoms({"d"})).empty());
  EXPECT_EQ(stable_models(parse_program("p :- not q. q :- not p.").rules, atoms({"p", "q"})).size(), 2u);
}

TEST(StableModels, CapIsEnforced) {
  std::vector<Atom> base;
  for (int i = 0; i < 21; ++i) base.push_back(Atom("x" + std::to_string(i)));
  EXPECT_THROW(stable_models({}, base, {}), CapExceeded);
}

TEST(Succeeds, Examples) {
  auto base = atoms({"a", "b", "c", "d"});
  EXPECT_TRUE(succeeds(wfm_of(testing_support::kOddLoop, base), atom("a"), base));
  EXPECT_FALSE(succeeds(wfm_of("a :- b, not c. d :- not d.", base), atom("a"), base));
  EXPECT_FALSE(succeeds(wfm_of(testing_support::kOddLoop, base), atom("zz"), base));
  // Undefined is not success.
  EXPECT_FALSE(succeeds(wfm_of(testing_support::kOddLoop, base), atom("d"), base));
}

// Against the W_P oracle, on every world of generated programs: the model
// partitions the base, agrees with the oracle, and when two-valued it is
// the unique stable model.
TEST(WellFounded, AgreesWithOracleOnGeneratedPrograms) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    auto gp = ground(random_program(seed));
    for (WorldMask m = 0; m < (WorldMask{1} << gp.pfacts.size()); ++m) {
      auto rules = gp.rules;
      for (const auto& a : world_of(m, gp.pfacts).chosen) rules.push_back(Rule{a, {}, std::nullopt});
      auto model = well_founded_model(rules, gp.herbrand_base);
      ASSERT_EQ(model.true_atoms.size() + model.false_atoms.size() + model.undefined_atoms.size(),
                gp.herbrand_base.size());

      auto ref = oracle::wfm(oracle::clauses_of(rules), oracle::base_of(gp));
      for (const auto& a : model.true_atoms) EXPECT_EQ(ref[to_string(a)], oracle::TV::T) << seed;
      for (const auto& a : model.false_atoms) EXPECT_EQ(ref[to_string(a)], oracle::TV::F) << seed;
      for (const auto& a : model.undefined_atoms) EXPECT_EQ(ref[to_string(a)], oracle::TV::U) << seed;

      if (model.two_valued()) {
        auto sm = stable_models(rules, gp.herbrand_base);
        ASSERT_EQ(sm.size(), 1u) << "seed " << seed;
        EXPECT_EQ(sm[0].true_atoms, model.true_atoms);
      }
    }
  }
}
