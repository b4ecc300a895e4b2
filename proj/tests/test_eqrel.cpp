#include <gtest/gtest.h>

#include "oracle.hpp"
#include "poseq/poseq.hpp"

using namespace poseq;

namespace {

void expect_matches(const EqRel& rel, const std::function<oracle::UnionFind(Stage)>& model,
                    Stage max_t, Nat max_n, Nat max_xy) {
  for (Stage t = 0; t <= max_t; t += 7) {
    auto uf = model(t);
    auto reps = uf.reps();
    for (Nat n = 0; n <= max_n; ++n) ASSERT_EQ(rel.rep(n, t), reps[n]) << "n=" << n << " t=" << t;
    for (Nat x = 0; x <= max_xy; x += 3)
      for (Nat y = 0; y <= max_xy; y += 5)
        ASSERT_EQ(rel.related(x, y, t), uf.same(x, y)) << x << "," << y << " t=" << t;
  }
}

}  // namespace

TEST(Partition, MergeKeepsMinimaAndShiftsRepresentatives) {
  Partition p;
  p.merge(3, 1);
  EXPECT_EQ(p.find(3), 1u);
  EXPECT_EQ(p.class_of(3), (NatList{1, 3}));
  EXPECT_EQ(p.rep(0), 0u);
  EXPECT_EQ(p.rep(2), 2u);
  EXPECT_EQ(p.rep(3), 4u);
  EXPECT_EQ(p.rank(3), 1u);
  EXPECT_EQ(p.rank(4), 3u);
  EXPECT_FALSE(p.merge(1, 3));
}

TEST(Relations, IdentityIsDiscreteAtEveryStage) {
  auto rel = identity_relation();
  for (Stage t : {0, 5, 100}) {
    EXPECT_EQ(rel->rep(7, t), 7u);
    EXPECT_FALSE(rel->related(2, 3, t));
    EXPECT_EQ(rel->class_at(4, t), (NatList{4}));
  }
}

TEST(Relations, EvensCollapseIntoOneClass) {
  auto rel = make_relation(FromRecursiveSetSpec{residue_set(2, 0)});
  EXPECT_FALSE(rel->related(0, 2, 0));
  EXPECT_TRUE(rel->related(0, 2, 1));
  EXPECT_EQ(rel->rep(1, 1000), 1u);
  EXPECT_EQ(rel->rep(2, 1000), 3u);
  EXPECT_TRUE(rel->related(4, 10, 200));
}

TEST(Relations, ExplicitPairEntersAtItsStage) {
  auto rel = make_relation(ExplicitPairsSpec{{{1, 1, 3}}});
  EXPECT_FALSE(rel->related(1, 3, 0));
  EXPECT_TRUE(rel->related(1, 3, 1));
  EXPECT_EQ(rel->rep(3, 1), 4u);
  EXPECT_EQ(rel->merges_upto(5).size(), 1u);
}

TEST(Relations, SymmetricDifferenceOverSingleBit) {
  auto rel = make_relation(SymmetricDifferenceSpec{finite_set_approx({0})});
  // D_x and D_y differ only on bit 0: x and x^1.
  EXPECT_TRUE(rel->related(4, 5, 200));
  EXPECT_FALSE(rel->related(4, 6, 200));
  EXPECT_EQ(rel->rep(1, 200), 2u);
}

TEST(Relations, RejectsSetWithoutGap) {
  RecursiveSetSpec all{[](Nat) { return true; }, 10, false, "all"};
  EXPECT_THROW(make_relation(FromRecursiveSetSpec{all}), input_error);
}

TEST(Relations, FiniteTableStopsPairing) {
  auto rel = make_relation(FromRecursiveSetSpec{table_set({2, 5, 9}, 10)});
  EXPECT_TRUE(rel->related(2, 9, 100));
  EXPECT_EQ(rel->class_at(2, 100), (NatList{2, 5, 9}));
}

TEST(OracleAgreement, Identity) {
  auto rel = identity_relation();
  expect_matches(*rel, [](Stage) { return oracle::UnionFind(oracle::kUniverse); }, 200, 32, 100);
}

TEST(OracleAgreement, Evens) {
  auto rel = make_relation(FromRecursiveSetSpec{residue_set(2, 0)});
  expect_matches(*rel,
                 [](Stage t) { return oracle::recursive_set_upto([](oracle::u64 x) { return x % 2 == 0; }, t); },
                 200, 32, 100);
}

TEST(OracleAgreement, ExplicitPairs) {
  std::vector<std::tuple<Stage, Nat, Nat>> ev{{1, 1, 3}, {4, 10, 20}, {9, 3, 20}, {30, 0, 50}};
  auto rel = make_relation(ExplicitPairsSpec{ev});
  expect_matches(*rel, [&](Stage t) { return oracle::pairs_upto(ev, t); }, 200, 32, 100);
}

TEST(OracleAgreement, SymmetricDifference) {
  auto rel = make_relation(SymmetricDifferenceSpec{finite_set_approx({0, 2})});
  expect_matches(*rel, [](Stage t) { return oracle::symdiff_upto({0, 2}, t); }, 200, 32, 100);
}

TEST(Relations, SnapshotsAreSharedWhileNothingChanges) {
  auto rel = make_relation(ExplicitPairsSpec{{{3, 0, 1}}});
  EXPECT_EQ(rel->at(1).get(), rel->at(2).get());
  EXPECT_NE(rel->at(2).get(), rel->at(3).get());
  EXPECT_EQ(rel->at(3).get(), rel->at(50).get());
}
