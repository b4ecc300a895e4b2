#include <gtest/gtest.h>

#include "oracle.hpp"
#include "poseq/poseq.hpp"

using namespace poseq;

namespace {

EqRelPtr evens_rel() { return make_relation(FromRecursiveSetSpec{residue_set(2, 0)}); }

SetPtr evens_set() {
  return make_set([](Stage s) { NatList o; for (Nat x = 0; x <= s; x += 2) o.push_back(x); return o; }, "evens");
}

}  // namespace

TEST(Content, DropsPausesAndSorts) {
  Sequence s{5, std::nullopt, 2, 5};
  EXPECT_EQ(content(s), (NatList{2, 5}));
  EXPECT_EQ(sequence_str(s), "(5,#,2,5)");
}

TEST(Canonical, EmptySetIsAllPauses) {
  auto t = canonical_text(finite_set_approx({}));
  for (const Datum& d : t->prefix(20)) EXPECT_FALSE(d.has_value());
}

TEST(Canonical, AscendingTwoHasContentZeroOne) {
  auto t = canonical_text(ascending_set(identity_relation(), 2));
  EXPECT_EQ(content(t->prefix(100)), (NatList{0, 1}));
}

TEST(Canonical, LateElementWaitsForItsStage) {
  auto s = make_set([](Stage st) { return st >= 3 ? NatList{5} : NatList{}; }, "late5");
  auto seq = canonical_text(s)->prefix(10);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_FALSE(seq[i].has_value());
  EXPECT_EQ(seq[3], Datum{5});
}

TEST(Canonical, ContentReachesLimitOnWindow) {
  auto rel = evens_rel();
  auto t = canonical_text(ascending_set(rel, 3));
  EXPECT_EQ(upto(content(t->prefix(1200)), 20), upto(ascending_at(*rel, 3, 1200), 20));
}

TEST(Seeded, SameSeedSamePrefix) {
  auto s = ascending_set(identity_relation(), 5);
  EXPECT_EQ(seeded_text(s, 42)->prefix(300), seeded_text(s, 42)->prefix(300));
  EXPECT_NE(seeded_text(s, 42)->prefix(300), seeded_text(s, 43)->prefix(300));
}

TEST(Seeded, NoPausesOnSingleton) {
  auto t = seeded_text(finite_set_approx({7}), 9, 0.0);
  for (const Datum& d : t->prefix(50)) EXPECT_EQ(d, Datum{7});
}

TEST(Seeded, ContentStaysInsideTarget) {
  auto t = seeded_text(ascending_set(identity_relation(), 3), 5);
  NatList c = content(t->prefix(200));
  EXPECT_TRUE(is_subset(c, NatList{0, 1, 2}));
  EXPECT_EQ(c, (NatList{0, 1, 2}));
}

TEST(Seeded, RejectsBadPauseRate) {
  auto s = finite_set_approx({1});
  EXPECT_THROW(seeded_text(s, 1, 1.0), input_error);
  EXPECT_THROW(seeded_text(s, 1, -0.1), input_error);
}

// Every prefix stays inside the limit set, for every generator.
TEST(Generators, PrefixContentInsideLimit) {
  auto rel = evens_rel();
  for (Nat n = 0; n < 5; ++n) {
    auto s = ascending_set(rel, n);
    NatList lim = s->enum_upto(1000);
    for (auto t : {canonical_text(s), seeded_text(s, n), seeded_text(s, n + 100, 0.5)})
      for (std::size_t len : {1, 10, 100, 400})
        EXPECT_TRUE(is_subset(content(t->prefix(len)), lim)) << t->descriptor();
  }
}

TEST(Fixed, TailsBehaveAsNamed) {
  Sequence p{1, 2};
  EXPECT_EQ(fixed_text(p, TextTail::Pause)->prefix(4), (Sequence{1, 2, std::nullopt, std::nullopt}));
  EXPECT_EQ(fixed_text(p, TextTail::RepeatLast)->prefix(4), (Sequence{1, 2, 2, 2}));
  EXPECT_EQ(fixed_text(p, TextTail::Cycle)->prefix(5), (Sequence{1, 2, 1, 2, 1}));
  EXPECT_EQ(concat_text({9}, fixed_text(p))->prefix(3), (Sequence{9, 1, 2}));
}

TEST(Closure, FourUnderEvensReachesAllEvens) {
  auto t = complete_by_closure({4}, evens_rel());
  NatList want;
  for (Nat x = 0; x <= 20; x += 2) want.push_back(x);
  EXPECT_EQ(upto(content(t->prefix(1000)), 20), want);
}

TEST(Closure, IdentityAddsNothing) {
  auto t = complete_by_closure({3, std::nullopt, 8}, identity_relation());
  EXPECT_EQ(content(t->prefix(200)), (NatList{3, 8}));
}

TEST(Closure, AllPausesStayPauses) {
  auto t = complete_by_closure({std::nullopt, std::nullopt}, evens_rel());
  EXPECT_TRUE(content(t->prefix(300)).empty());
}

// Content after stage s is the closure at s, against union-find.
TEST(Closure, MatchesOracleClosure) {
  auto t = complete_by_closure({6, 1}, evens_rel());
  auto in_a = [](oracle::u64 x) { return x % 2 == 0; };
  for (Stage s : {20, 80, 300}) {
    auto uf = oracle::recursive_set_upto(in_a, s);
    NatList want;
    for (Nat x : {6, 1})
      for (auto y : uf.members(x)) want.push_back(y);
    normalize(want);
    // Position p reads the closure at stage p, so a long enough prefix
    // read after stage s holds at least [cnt]_s.
    EXPECT_TRUE(is_subset(upto(want, 30), content(t->prefix(2 * s + 40)))) << "s=" << s;
  }
}

TEST(Adversary, ConstantLearnerStalls) {
  auto rel = identity_relation();
  auto chain = ascending_family(rel);
  auto m = simple_learner(chain, "const", [](std::span<const Datum>) { return Hypothesis{1}; });
  auto r = adversarial_chain_text(*m, *chain);
  EXPECT_LE(r.mind_changes, 1u);
  EXPECT_TRUE(r.verdict.is_inconclusive());
}

TEST(Adversary, ChainLearnerIsForcedToChange) {
  auto rel = identity_relation();
  auto fam = build_family(ChainFamily{evens_set()}, rel);
  auto m = make_family_learner(ChainLearner{evens_set(), 1, false}, {rel});
  auto r = adversarial_chain_text(*m, *fam);
  EXPECT_GE(r.mind_changes, 5u) << r.verdict.str();
  EXPECT_TRUE(r.verdict.is_holds());
}

TEST(Adversary, ZeroBudgetDoesNothing) {
  auto chain = ascending_family(identity_relation());
  auto m = ascending_ex_learner(identity_relation());
  auto r = adversarial_chain_text(*m, *chain, AdversaryBudget{.evaluations = 0});
  EXPECT_TRUE(r.sequence.empty());
  EXPECT_EQ(r.mind_changes, 0u);
}
