#include <gtest/gtest.h>

#include "oracle.hpp"
#include "poseq/poseq.hpp"

using namespace poseq;

namespace {

EqRelPtr evens_rel() { return make_relation(FromRecursiveSetSpec{residue_set(2, 0)}); }

SetPtr evens_set() {
  return make_set([](Stage s) { NatList o; for (Nat x = 0; x <= s; x += 2) o.push_back(x); return o; }, "evens");
}

constexpr auto P = std::nullopt;

Sequence pad(Sequence s, std::size_t len) {
  while (s.size() < len) s.push_back(P);
  return s;
}

Hypothesis last_hyp(const Learner& m, const Sequence& s) { return m.run(s).back().hyp; }

}  // namespace

TEST(Ascending, IdentityConvergesToTwo) {
  auto m = ascending_ex_learner(identity_relation());
  Sequence s = pad({0, 1}, 30);
  auto c = m->run(s);
  for (std::size_t n = 1; n < c.size(); ++n) EXPECT_EQ(c[n].hyp, Hypothesis{2});
  EXPECT_EQ(m->space()->decode(2)->enum_upto(30), (NatList{0, 1}));
}

TEST(Ascending, EmptyTextNamesEmptySet) {
  auto m = ascending_ex_learner(evens_rel());
  for (auto& c : m->run(pad({}, 20))) EXPECT_EQ(c.hyp, Hypothesis{0});
}

TEST(Ascending, PairOneThreeConvergesToThree) {
  auto rel = make_relation(ExplicitPairsSpec{{{0, 1, 3}}});
  auto m = ascending_ex_learner(rel);
  Hypothesis h = last_hyp(*m, pad({0, 1, 3, 2}, 20));
  EXPECT_EQ(h, Hypothesis{3});
  EXPECT_EQ(upto(m->space()->decode(*h)->enum_upto(50), 5), (NatList{0, 1, 2, 3}));
}

TEST(Ascending, ConservativeRepeatsUntilContentEscapes) {
  auto rel = identity_relation();
  auto m = ascending_ex_learner(rel, true);
  Sequence s{0, P, P, 1, P, 2, 0};
  auto c = m->run(s);
  std::vector<Nat> ns;
  for (auto& x : c) ns.push_back(pair_decode(*x.hyp).first);
  EXPECT_EQ(ns, (std::vector<Nat>{1, 1, 1, 2, 2, 3, 3}));
  // The hypothesis never held anything beyond the validated reps.
  EXPECT_EQ(m->space()->decode(*c.back().hyp)->enum_upto(100), (NatList{0, 1, 2}));
}

TEST(Ascending, ConservativeFrozenSetStopsAtRepresentativeChange) {
  // a_1 moves from 1 to 2 at stage 5.
  auto rel = make_relation(ExplicitPairsSpec{{{5, 0, 1}}});
  auto space = frozen_ascending_space(rel);
  auto s = space->decode(pair_code(2, 2));
  EXPECT_EQ(s->enum_upto(4), (NatList{0, 1}));
  EXPECT_EQ(s->enum_upto(50), (NatList{0, 1}));
}

TEST(BcFinite, EmptyContentDecodesEmpty) {
  auto m = eta_finite_bc_learner(evens_rel());
  auto h = m->step(pad({}, 3)).hyp;
  ASSERT_TRUE(h);
  EXPECT_TRUE(m->space()->decode(*h)->enum_upto(500).empty());
}

TEST(BcFinite, FourUnderEvensDecodesEvens) {
  auto m = eta_finite_bc_learner(evens_rel());
  auto h = m->step(Sequence{4}).hyp;
  NatList want;
  for (Nat x = 0; x <= 20; x += 2) want.push_back(x);
  EXPECT_EQ(upto(m->space()->decode(*h)->enum_upto(1000), 20), want);
}

TEST(BcFinite, IdentityKeepsContent) {
  auto m = eta_finite_bc_learner(identity_relation());
  auto h = m->step(Sequence{5, P, 1}).hyp;
  EXPECT_EQ(m->space()->decode(*h)->enum_upto(100), (NatList{1, 5}));
}

// At each prefix the decoded hypothesis read at that stage equals the
// union-find closure of the content.
TEST(BcFinite, MatchesOracleClosure) {
  auto rel = evens_rel();
  auto m = eta_finite_bc_learner(rel);
  Sequence s{3, 6, P, 1, 10, P, P, 7};
  auto c = m->run(s);
  auto in_a = [](oracle::u64 x) { return x % 2 == 0; };
  for (std::size_t n = 0; n < c.size(); ++n) {
    Stage t = n + 1;
    auto uf = oracle::recursive_set_upto(in_a, t);
    NatList want;
    for (Nat x : content(std::span<const Datum>(s).first(n + 1)))
      for (auto y : uf.members(x)) want.push_back(y);
    normalize(want);
    EXPECT_EQ(upto(m->space()->decode(*c[n].hyp)->enum_upto(t), 40), upto(want, 40)) << n;
  }
}

TEST(BcFinite, OversizedContentRepeatsPrior) {
  auto m = eta_finite_bc_learner(identity_relation());
  auto c = m->run(Sequence{1, 200});
  EXPECT_EQ(c[0].budget_events, 0u);
  EXPECT_EQ(c[1].budget_events, 1u);
  EXPECT_EQ(c[1].hyp, c[0].hyp);
}

TEST(Zeta, ThreeConvergesToOne) {
  auto z = finite_set_approx({1, 2, 5});
  auto m = zeta_confident_learner(build_zeta(z));
  EXPECT_EQ(last_hyp(*m, Sequence(10, Datum{3})), Hypothesis{1});
  EXPECT_EQ(m->space()->decode(0)->enum_upto(100), (NatList{0, 1, 2}));
  EXPECT_EQ(m->space()->decode(1)->enum_upto(100), (NatList{0, 1, 2, 3}));
}

TEST(Zeta, EmptyContentNamesZero) {
  auto m = zeta_confident_learner(build_zeta(finite_set_approx({1, 2, 5})));
  EXPECT_EQ(last_hyp(*m, pad({}, 5)), Hypothesis{0});
}

TEST(Zeta, NothingFitsFallsBackToZero) {
  auto m = zeta_confident_learner(build_zeta(finite_set_approx({1, 2, 5})));
  Sequence s;
  for (Nat x = 0; x <= 50; ++x) s.push_back(x);
  EXPECT_EQ(last_hyp(*m, pad(s, 80)), Hypothesis{0});
}

TEST(Zeta, ZeroInZRejected) {
  EXPECT_THROW(build_zeta(finite_set_approx({0, 3})), input_error);
}

TEST(StrongUnion, AgreementPassesThrough) {
  auto rel = identity_relation();
  auto fam = ascending_family(rel);
  auto m = ascending_ex_learner(rel);
  auto id = [](Index i) { return i; };
  auto u = strong_union_confident_learner(m, m, id, id, fam);
  Sequence s{0, 2, 1, P, 3};
  auto a = m->run(s), b = u->run(s);
  for (std::size_t n = 0; n < s.size(); ++n) EXPECT_EQ(a[n].hyp, b[n].hyp);
}

TEST(StrongUnion, LeastDifferenceWitnessDecides) {
  auto rel = identity_relation();
  auto fam = ascending_family(rel);
  auto m1 = simple_learner(fam, "A1", [](std::span<const Datum>) { return Hypothesis{1}; });
  auto m2 = simple_learner(fam, "A2", [](std::span<const Datum>) { return Hypothesis{2}; });
  auto id = [](Index i) { return i; };
  auto u = strong_union_confident_learner(m1, m2, id, id, fam);
  auto c1 = u->run(pad({0, 1}, 20));
  EXPECT_EQ(c1.back().hyp, Hypothesis{2});
  auto c2 = u->run(pad({0}, 20));
  EXPECT_EQ(c2.back().hyp, Hypothesis{1});
  for (auto& c : c1) EXPECT_EQ(c.budget_events, 0u);
}

TEST(StrongUnion, ExhaustedSearchIsABudgetEvent) {
  auto rel = identity_relation();
  auto fam = ascending_family(rel);
  // Two indices of the same set: no difference is ever found.
  auto twin = make_numbering([rel](Index i) { return ascending_set(rel, i == 7 ? 1 : i); }, "twin");
  auto m1 = simple_learner(twin, "a", [](std::span<const Datum>) { return Hypothesis{1}; });
  auto m2 = simple_learner(twin, "b", [](std::span<const Datum>) { return Hypothesis{7}; });
  auto id = [](Index i) { return i; };
  auto u = strong_union_confident_learner(m1, m2, id, id, twin, 20);
  auto c = u->run(Sequence{0, P});
  EXPECT_EQ(c[0].budget_events, 1u);
  EXPECT_EQ(c[1].hyp, c[0].hyp);
}

TEST(Converter, VacillationOnTwoThreeBecomesAscendingThree) {
  auto rel = identity_relation();
  auto inner = simple_learner(ascending_family(rel), "vac", [](std::span<const Datum> s) {
    return Hypothesis{s.size() % 2 ? 2 : 3};
  });
  auto conv = vac_to_ex_converter(inner, rel);
  Sequence s = pad({0, 1, 2}, 12);
  EXPECT_EQ(last_hyp(*conv, s), Hypothesis{2 * 3});
  EXPECT_EQ(conv->space()->decode(6)->enum_upto(50), (NatList{0, 1, 2}));
}

TEST(Converter, SilentLearnerUsesSeenRepresentatives) {
  auto rel = identity_relation();
  auto inner = simple_learner(ascending_family(rel), "silent", [](std::span<const Datum>) { return Hypothesis{}; });
  auto conv = vac_to_ex_converter(inner, rel);
  Hypothesis h = last_hyp(*conv, Sequence{3, 1});
  ASSERT_TRUE(h);
  EXPECT_EQ(conv->space()->decode(*h)->enum_upto(50), NatList{});
  Hypothesis h0 = last_hyp(*conv, Sequence{0, 1});
  EXPECT_EQ(conv->space()->decode(*h0)->enum_upto(50), (NatList{0, 1}));
}

TEST(Converter, TopAndNextSeenGivesTopPlusTwo) {
  auto rel = identity_relation();
  auto inner = simple_learner(ascending_family(rel), "three", [](std::span<const Datum>) { return Hypothesis{3}; });
  auto conv = vac_to_ex_converter(inner, rel);
  EXPECT_EQ(last_hyp(*conv, pad({0, 1, 2, 3, 4}, 8)), Hypothesis{2 * 5});
}

TEST(Converter, PartialRepresentativesGiveOddIndex) {
  auto rel = identity_relation();
  auto inner = simple_learner(ascending_family(rel), "four", [](std::span<const Datum>) { return Hypothesis{4}; });
  auto conv = vac_to_ex_converter(inner, rel);
  Hypothesis h = last_hyp(*conv, Sequence{0, 2});
  ASSERT_TRUE(h);
  EXPECT_EQ(*h % 2, 1u);
  EXPECT_EQ(conv->space()->decode(*h)->enum_upto(50), (NatList{0, 2}));
}

TEST(Sample, FirstDatumEvenCommitsToClass) {
  auto rel = evens_rel();
  auto m = make_family_learner(FirstDatumFinite{residue_set(2, 0)}, {rel});
  auto r = extract_characteristic_sample(*m, closure_set(rel, {0}), 50);
  ASSERT_TRUE(r.sample);
  EXPECT_EQ(*r.sample, (NatList{0}));
  EXPECT_TRUE(r.verdict.is_holds());
}

TEST(Sample, OddSingletonIsItsOwnSample) {
  auto rel = evens_rel();
  auto m = make_family_learner(FirstDatumFinite{residue_set(2, 0)}, {rel});
  auto r = extract_characteristic_sample(*m, finite_set_approx({3}), 50);
  ASSERT_TRUE(r.sample);
  EXPECT_EQ(*r.sample, (NatList{3}));
}

TEST(Sample, NeverCommittingIsInconclusive) {
  auto fam = ascending_family(identity_relation());
  auto m = simple_learner(fam, "mute", [](std::span<const Datum>) { return Hypothesis{}; });
  auto r = extract_characteristic_sample(*m, finite_set_approx({1}), 40);
  EXPECT_FALSE(r.sample);
  EXPECT_TRUE(r.verdict.is_inconclusive());
}

TEST(FirstDatum, OddDatumCommitsToSingleton) {
  auto rel = evens_rel();
  auto m = make_family_learner(FirstDatumFinite{residue_set(2, 0)}, {rel});
  auto c = m->run(Sequence{7, 1, 4, P, 9});
  for (auto& x : c) EXPECT_EQ(x.hyp, c[0].hyp);
  EXPECT_EQ(m->space()->decode(*c[0].hyp)->enum_upto(100), (NatList{7}));
}

TEST(WeakMonotone, AbsentRepresentativeKeepsBaseSet) {
  auto rel = identity_relation();
  auto m = make_family_learner(WeakMonotoneLearner{evens_set(), 1}, {rel});
  for (auto& c : m->run(Sequence{0, 2, P, 4, 6})) EXPECT_EQ(c.hyp, Hypothesis{0});
}

TEST(WeakMonotone, RepresentativeSeenMovesToChain) {
  auto rel = identity_relation();
  auto m = make_family_learner(WeakMonotoneLearner{evens_set(), 1}, {rel});
  EXPECT_EQ(last_hyp(*m, Sequence{1}), Hypothesis{1});
  Hypothesis h = last_hyp(*m, Sequence{0, 1, 2});
  ASSERT_TRUE(h);
  EXPECT_EQ(m->space()->decode(*h)->enum_upto(100), (NatList{0, 1, 2}));
}

// Over the identity ascending family, almost every conjecture names A_n.
TEST(CoSingleton, AscendingTextIsLearnedBehaviourally) {
  auto rel = identity_relation();
  WTable w;
  w.add(0, 0, 4);
  w.add(1, 0, 2);
  w.add(1, 0, 9);
  auto m = make_family_learner(CoSingletonBc{BcNotExFamily{[](std::span<const Datum> s) {
                                return finite_set_code(content(s));
                              }}},
                              {rel, &w});
  for (Nat n : {1, 2, 3}) {
    auto target = ascending_set(rel, n);
    auto seq = canonical_text(target)->prefix(40);
    auto c = m->run(seq);
    for (std::size_t i = 10; i < c.size(); ++i) {
      ASSERT_TRUE(c[i].hyp);
      EXPECT_EQ(m->space()->decode(*c[i].hyp)->enum_upto(200), target->enum_upto(200)) << n << " " << i;
    }
  }
}

TEST(CoSingleton, NeedsTable) {
  EXPECT_THROW(make_family_learner(CoSingletonBc{BcNotExFamily{}}, {identity_relation()}), input_error);
}

TEST(Bounded, SmallContentNamedExactly) {
  auto m = make_family_learner(BoundedCardinalityConfident{}, {identity_relation()});
  EXPECT_EQ(m->space()->decode(*last_hyp(*m, Sequence{4, 2}))->enum_upto(9), (NatList{2, 4}));
  EXPECT_EQ(last_hyp(*m, Sequence{4, 2, 8}), Hypothesis{0});
}

TEST(PairsAboveOne, ZeroSeenGivesAscending) {
  auto rel = identity_relation();
  auto m = make_family_learner(PairsAboveOneLearner{}, {rel});
  Hypothesis h = last_hyp(*m, Sequence{0, 1, 2});
  EXPECT_EQ(m->space()->decode(*h)->enum_upto(50), (NatList{0, 1, 2}));
  Hypothesis g = last_hyp(*m, Sequence{1, 4});
  EXPECT_EQ(m->space()->decode(*g)->enum_upto(50), (NatList{1, 4}));
}

TEST(OddAscending, ClassWithoutZeroNamesItsClass) {
  auto rel = identity_relation();
  auto m = make_family_learner(OddAscendingClassesLearner{}, {rel});
  EXPECT_EQ(m->space()->decode(*last_hyp(*m, Sequence{5}))->enum_upto(50), (NatList{5}));
  EXPECT_EQ(m->space()->decode(*last_hyp(*m, Sequence{0}))->enum_upto(50), (NatList{0}));
  EXPECT_EQ(m->space()->decode(*last_hyp(*m, Sequence{0, 1, 2}))->enum_upto(50), (NatList{0, 1, 2}));
}

TEST(NaturalsAtTwo, BothSamplesGiveNaturals) {
  auto rel = evens_rel();
  auto fin = make_family_learner(FirstDatumFinite{residue_set(2, 0)}, {rel});
  auto m = make_family_learner(NaturalsAtTwoLearner{fin, {0}, {1}}, {rel});
  EXPECT_EQ(last_hyp(*m, Sequence{0, 1}), Hypothesis{2});
  EXPECT_EQ(last_hyp(*m, Sequence{0}), Hypothesis{0});
  EXPECT_EQ(m->space()->decode(2)->enum_upto(3), (NatList{0, 1, 2, 3}));
}

TEST(Samples, CommitsOnFirstContainedSample) {
  auto rel = identity_relation();
  auto m = make_family_learner(CharacteristicSampleFinite{{{0}, {1}, {0, 1, 2}}}, {rel});
  auto c = m->run(Sequence{P, 1, 0, 2});
  EXPECT_EQ(c[0].hyp, Hypothesis{});
  EXPECT_EQ(c[1].hyp, Hypothesis{1});
  EXPECT_EQ(c[3].hyp, Hypothesis{1});
}

TEST(FamilyLearners, MissingParametersRejected) {
  EXPECT_THROW(make_family_learner(ChainLearner{}, {identity_relation()}), input_error);
  EXPECT_THROW(make_family_learner(WeakMonotoneLearner{}, {identity_relation()}), input_error);
  EXPECT_THROW(make_family_learner(OddAscendingClassesLearner{}, {}), input_error);
}

// step() on a prefix and the run() entry at the same length agree.
TEST(Determinism, StepMatchesRun) {
  auto rel = make_relation(ExplicitPairsSpec{{{4, 1, 3}, {9, 0, 6}}});
  std::vector<LearnerPtr> ms = {ascending_ex_learner(rel), ascending_ex_learner(rel, true),
                                eta_finite_bc_learner(rel),
                                make_family_learner(PairsAboveOneLearner{}, {rel})};
  auto seq = seeded_text(ascending_set(rel, 4), 11)->prefix(40);
  for (auto& m : ms) {
    auto c = m->run(seq);
    for (std::size_t n = 1; n <= seq.size(); ++n)
      EXPECT_EQ(m->step(std::span<const Datum>(seq).first(n)), c[n - 1]) << m->name() << " " << n;
  }
}
