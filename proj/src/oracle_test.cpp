#include "ctlev/oracle.hpp"

#include <gtest/gtest.h>

#include "support/build.hpp"

namespace ctlev {
namespace {

using testing::build;
using testing::F;
using testing::fixture;

const Formula p = Formula::prop("p");

TEST(NaiveSat, Examples) {
  const Model chain = fixture("chain.json");
  EXPECT_TRUE(naive_sat(chain, "a", F("E[p U q]")));
  EXPECT_FALSE(naive_sat(chain, "a", F("EG p")));
  EXPECT_TRUE(naive_sat(chain, "b", F("EX q")));
  EXPECT_TRUE(naive_sat(chain, "a", F("AF q")));
  EXPECT_TRUE(naive_sat(fixture("loop.json"), "s", F("EG p")));
  EXPECT_FALSE(naive_sat(fixture("loop.json"), "s", F("EF q")));
  EXPECT_TRUE(naive_sat(fixture("dead.json"), "t", F("EG p")));
  EXPECT_FALSE(naive_sat(fixture("dead.json"), "t", F("EX true")));
  EXPECT_TRUE(naive_sat(fixture("dead.json"), "t", F("AX false")));
}

TEST(NaiveSat, Guards) {
  EXPECT_THROW(naive_sat(build({{"s"}, {"s"}}, {p}), "s", p), GuardError);
  std::vector<StateId> many;
  for (int i = 0; i < 13; ++i) many.push_back("s" + std::to_string(i + 10));
  EXPECT_THROW(NaiveSemantics{build({many})}, GuardError);
}

TEST(Supermodels, ClosedKripkeHasOne) {
  const Model chain = fixture("chain.json");
  EXPECT_EQ(enumerate_supermodels(chain, {2, std::nullopt}, [](const Model&) { return true; }), 1u);
}

TEST(Supermodels, SingleOpenStateCounts) {
  const Model m = build({{"s"}}, {p});
  const auto count = [&](SupermodelBounds b) { return enumerate_supermodels(m, b, [](const Model&) { return true; }); };
  // No fresh state: with or without s->s, times two values of p.
  EXPECT_EQ(count({0, std::nullopt}), 4u);
  // One fresh state needs s->~0; with a single new transition that is all.
  EXPECT_EQ(count({1, 1}), 8u);
  // s->~0 plus any of s->s, ~0->s, ~0->~0; two states to label.
  EXPECT_EQ(count({1, std::nullopt}), 4u + 8u * 4u);
}

TEST(Supermodels, VisitedModelsAreSoundAndExtend) {
  const Formula f = F("EX p");
  const Model m = build({{"s", "t"}, {"t"}, {{"s", "t"}}, {{"t", p, true}}}, {f});
  std::size_t n = enumerate_supermodels(m, {1, 2}, [&](const Model& sound) {
    EXPECT_TRUE(sound.is_full());
    EXPECT_TRUE(is_submodel(m, sound));
    EXPECT_EQ(sound.label(sound.index_of("s"), f), true);
    return true;
  });
  EXPECT_GT(n, 0u);
}

TEST(Supermodels, ConflictingLabelGivesNone) {
  const Model m = build({{"s"}, {}, {}, {{"s", Formula::truth(), false}}});
  EXPECT_EQ(enumerate_supermodels(m, {1, 2}, [](const Model&) { return true; }), 0u);
}

TEST(Supermodels, StopsEarly) {
  const Model m = build({{"s"}}, {p});
  int calls = 0;
  enumerate_supermodels(m, {1, std::nullopt}, [&](const Model&) { return ++calls < 3; });
  EXPECT_EQ(calls, 3);
}

TEST(SemanticEvidence, Examples) {
  const SupermodelBounds bounds{1, 2};
  const Model witness = build({{"s", "t"}, {}, {{"s", "t"}}, {{"t", p, true}}});
  EXPECT_TRUE(is_evidence_semantic(witness, {"s", F("EX p"), true}, bounds));
  EXPECT_FALSE(is_evidence_semantic(witness, {"s", F("EX p"), false}, bounds));

  const Model unknown = build({{"s", "t"}, {}, {{"s", "t"}}, {{"t", p, false}}});
  EXPECT_FALSE(is_evidence_semantic(unknown, {"s", F("EX p"), true}, bounds));
  EXPECT_FALSE(is_evidence_semantic(unknown, {"s", F("EX p"), false}, bounds));

  const Model stuck = build({{"s"}, {"s"}});
  EXPECT_TRUE(is_evidence_semantic(stuck, {"s", F("EX true"), false}, bounds));
  EXPECT_TRUE(is_evidence_semantic(build({{"s"}}), {"s", Formula::truth(), true}, bounds));

  const Model outside = build({{"s"}, {}, {}, {{"s", F("EX p"), true}}});
  EXPECT_THROW(is_evidence_semantic(outside, {"s", F("EG p"), true}, bounds), GuardError);
}

TEST(Unconstrained, Syntactic) {
  const auto check = [](std::vector<const char*> texts) {
    std::vector<Formula> fs;
    for (const char* t : texts) fs.push_back(F(t));
    return syntactically_unconstrained(fs);
  };
  EXPECT_TRUE(check({"p", "!q"}));
  EXPECT_TRUE(check({"E[p U q] || !r"}));
  EXPECT_FALSE(check({"true"}));
  EXPECT_FALSE(check({"p", "p || q"}));
  EXPECT_FALSE(check({"EX p"}));
  EXPECT_FALSE(check({"E[p U p]"}));
}

TEST(Unconstrained, BoundedSearch) {
  const auto constrained = [](std::vector<const char*> texts, std::size_t n) {
    std::vector<Formula> fs;
    for (const char* t : texts) fs.push_back(F(t));
    return is_constrained_closed_bounded(fs, n);
  };
  EXPECT_TRUE(constrained({"true"}, 1));
  EXPECT_TRUE(constrained({"EX true"}, 1));
  EXPECT_TRUE(constrained({"p", "p || q"}, 1));
  EXPECT_TRUE(constrained({"!p", "p"}, 1));
  EXPECT_FALSE(constrained({"p", "!q"}, 2));
  EXPECT_FALSE(constrained({"E[p U q]"}, 2));
  EXPECT_THROW(constrained({"p", "q", "r", "t"}, 4), GuardError);
}

}  // namespace
}  // namespace ctlev
