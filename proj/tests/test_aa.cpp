#include <gtest/gtest.h>

#include "ppaa/aa_semantics.hpp"
#include "ppaa/equivalence.hpp"
#include "support.hpp"

using namespace ppaa;
using Ext = std::vector<std::uint32_t>;

// alpha = 0, beta = 1; beta attacks itself.
TEST(Grounded, SelfAttackingArgumentIsLeftOut) {
  std::vector<Attack> att{{1, 1}};
  EXPECT_EQ(grounded_extension(2, att), (Ext{0}));
}

TEST(Stable, SelfAttackingArgumentPreventsStability) {
  std::vector<Attack> att{{1, 1}};
  EXPECT_TRUE(stable_extensions(2, att).empty());
}

TEST(Grounded, NoAttacksAcceptsEverything) {
  EXPECT_EQ(grounded_extension(3, {}), (Ext{0, 1, 2}));
  auto st = stable_extensions(3, {});
  ASSERT_EQ(st.size(), 1u);
  EXPECT_EQ(st[0], (Ext{0, 1, 2}));
}

TEST(Grounded, OddLoopProgramAcceptsThreeArguments) {
  auto f = build_problog_aba(testing_support::ground_text(testing_support::kOddLoop));
  auto aaf = build_aa_framework(f);
  std::set<std::string> in;
  for (auto i : grounded_extension(aaf)) in.insert(render_argument(f, aaf.args[i]));
  EXPECT_EQ(in, (std::set<std::string>{"{not c} ⊢_{r0,r1} a", "{} ⊢_{r1} b", "{not c} ⊢_{} not c"}));
  EXPECT_TRUE(stable_extensions(aaf).empty());
}

TEST(Grounded, ReinstatementChain) {
  // 0 -> 1 -> 2: 0 defends 2.
  std::vector<Attack> att{{0, 1}, {1, 2}};
  EXPECT_EQ(grounded_extension(3, att), (Ext{0, 2}));
}

TEST(Grounded, MutualAttackIsUndecided) {
  std::vector<Attack> att{{0, 1}, {1, 0}};
  EXPECT_TRUE(grounded_extension(2, att).empty());
  EXPECT_EQ(stable_extensions(2, att).size(), 2u);
}

TEST(Grounded, ActiveMaskMatchesExplicitRestriction) {
  std::vector<Attack> att{{0, 1}, {1, 2}, {3, 0}};
  AttackGraph g(4, att);
  std::vector<char> active{1, 1, 1, 0};
  EXPECT_EQ(mask_to_indices(grounded_mask(g, &active)), (Ext{0, 2}));
  EXPECT_EQ(mask_to_indices(grounded_mask(g)), (Ext{1, 3}));
}

TEST(Stable, CapIsEnforced) { EXPECT_THROW(stable_extensions(26, {}), CapExceeded); }

// On the frameworks of generated programs: the grounded extension is
// admissible, contained in every stable extension, and its labelling legal.
TEST(Grounded, StructuralPropertiesOnGeneratedFrameworks) {
  std::size_t checked_stable = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto f = build_problog_aba(ground(random_program(seed)));
    auto aaf = build_aa_framework(f);
    auto g = grounded_extension(aaf);
    EXPECT_TRUE(conflict_free(g, aaf.attacks));
    EXPECT_TRUE(admissible(aaf.size(), g, aaf.attacks));
    auto lab = grounded_labelling(aaf.size(), aaf.attacks);
    EXPECT_TRUE(is_legal(lab, aaf.attacks)) << "seed " << seed;
    if (aaf.size() > 25) continue;
    ++checked_stable;
    for (const auto& s : stable_extensions(aaf)) {
      EXPECT_TRUE(std::includes(s.begin(), s.end(), g.begin(), g.end())) << "seed " << seed;
      EXPECT_TRUE(admissible(aaf.size(), s, aaf.attacks));
    }
  }
  EXPECT_GT(checked_stable, 20u);
}

// Stable extensions of the LP framework correspond to stable models.
TEST(Stable, CorrespondToStableModels) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto p = random_program(seed);
    p.pfacts.clear();
    auto gp = ground(p);
    auto f = build_problog_aba(gp);
    auto aaf = build_aa_framework(f);
    if (aaf.size() > 25) continue;
    std::set<std::vector<Atom>> from_args;
    for (const auto& s : stable_extensions(aaf)) {
      std::set<Atom> claims;
      for (auto i : s)
        if (aaf.args[i].claim.kind == Sentence::Kind::Atom) claims.insert(gp.herbrand_base[aaf.args[i].claim.atom]);
      from_args.insert({claims.begin(), claims.end()});
    }
    std::set<std::vector<Atom>> from_models;
    for (const auto& m : stable_models(gp.rules, gp.herbrand_base)) from_models.insert(m.true_atoms);
    EXPECT_EQ(from_args, from_models) << "seed " << seed;
  }
}
