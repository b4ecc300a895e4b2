#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "constructions.hpp"
#include "numbering.hpp"
#include "text.hpp"

namespace poseq {

struct Conjecture {
  Hypothesis hyp;
  std::size_t budget_events = 0;
  bool operator==(const Conjecture&) const = default;
};

inline std::string hypothesis_str(const Hypothesis& h) { return h ? std::to_string(*h) : "?"; }

// A learner maps finite sequences to hypotheses in a declared space.
// `advance` sees the prefix and the conjecture on the prefix one shorter
// (nullptr for the empty prefix); learners that never look at it report
// memoryless() and are evaluated directly.
class Learner {
 public:
  Learner(NumberingPtr space, std::string name, bool class_preserving = false)
      : space_(std::move(space)), name_(std::move(name)), class_preserving_(class_preserving) {}
  virtual ~Learner() = default;

  Conjecture step(std::span<const Datum> sigma) const {
    if (memoryless()) return advance(sigma, nullptr);
    Conjecture c = advance(sigma.first(0), nullptr);
    for (std::size_t n = 1; n <= sigma.size(); ++n) c = advance(sigma.first(n), &c);
    return c;
  }

  // Conjectures on the prefixes of length 1..|text|.
  std::vector<Conjecture> run(std::span<const Datum> text) const {
    std::vector<Conjecture> out;
    out.reserve(text.size());
    Conjecture c = memoryless() ? Conjecture{} : advance(text.first(0), nullptr);
    for (std::size_t n = 1; n <= text.size(); ++n) {
      c = memoryless() ? advance(text.first(n), nullptr) : advance(text.first(n), &c);
      out.push_back(c);
    }
    return out;
  }

  Hypothesis operator()(std::span<const Datum> sigma) const { return step(sigma).hyp; }

  const NumberingPtr& space() const { return space_; }
  const std::string& name() const { return name_; }
  bool class_preserving() const { return class_preserving_; }

  virtual Conjecture advance(std::span<const Datum> prefix, const Conjecture* prior) const = 0;
  virtual bool memoryless() const { return false; }

 private:
  NumberingPtr space_;
  std::string name_;
  bool class_preserving_;
};

using LearnerPtr = std::shared_ptr<const Learner>;

class FunctionLearner : public Learner {
 public:
  using Fn = std::function<Conjecture(std::span<const Datum>, const Conjecture*)>;

  FunctionLearner(NumberingPtr space, std::string name, Fn fn, bool memoryless,
                  bool class_preserving = false)
      : Learner(std::move(space), std::move(name), class_preserving),
        fn_(std::move(fn)),
        memoryless_(memoryless) {}

  Conjecture advance(std::span<const Datum> prefix, const Conjecture* prior) const override {
    return fn_(prefix, prior);
  }
  bool memoryless() const override { return memoryless_; }

 private:
  Fn fn_;
  bool memoryless_;
};

inline LearnerPtr make_learner(NumberingPtr space, std::string name, FunctionLearner::Fn fn,
                               bool memoryless, bool class_preserving = false) {
  return std::make_shared<FunctionLearner>(std::move(space), std::move(name), std::move(fn),
                                           memoryless, class_preserving);
}

// A memoryless learner from a plain hypothesis function.
inline LearnerPtr simple_learner(NumberingPtr space, std::string name,
                                 std::function<Hypothesis(std::span<const Datum>)> f,
                                 bool class_preserving = false) {
  return make_learner(
      std::move(space), std::move(name),
      [f = std::move(f)](std::span<const Datum> s, const Conjecture*) { return Conjecture{f(s)}; },
      true, class_preserving);
}

inline SequenceLearner as_sequence_learner(LearnerPtr m) {
  return [m](std::span<const Datum> s) { return m->step(s).hyp; };
}

// ---------------------------------------------------------------------------
// Helpers on stage-t representatives

// Least n >= from with a_{n,t} not in c.
inline Nat least_absent(const Partition& p, const NatList& c, Nat from = 0) {
  Nat n = from;
  while (contains(c, p.rep(n))) ++n;
  return n;
}

// First stage of the run, ending at t, over which a_{m,.} for m in ms stay
// as they are at t.
inline Stage epoch_start(const EqRel& rel, const NatList& ms, Stage t) {
  Stage s = t;
  while (s > 0 && detail::reps_stable(rel, ms, s - 1, t)) --s;
  return s;
}

// ---------------------------------------------------------------------------
// Ascending-family learners

// Index pair(n,t) -> A_n read at stage t and frozen just before the first
// later change of a_m, m <= n.
inline NumberingPtr frozen_ascending_space(EqRelPtr rel) {
  return make_numbering(
      [rel](Index i) -> SetPtr {
        auto [n, t] = pair_decode(i);
        NatList ms;
        for (Nat m = 0; m <= n; ++m) ms.push_back(m);
        auto valid = [rel, ms, t = t](Stage s) { return s <= t || detail::reps_stable(*rel, ms, t, s); };
        return guard_overwrite(ascending_set(rel, n), valid,
                               [](const NatList&, Stage) { return finite_set_approx({}); },
                               "A_" + std::to_string(n) + "@" + std::to_string(t));
      },
      "frozen-ascending/" + rel->name(), rel);
}

inline LearnerPtr ascending_ex_learner(EqRelPtr rel, bool conservative = false) {
  if (!conservative) {
    return simple_learner(ascending_family(rel), "ascending", [rel](std::span<const Datum> s) {
      return Hypothesis{least_absent(*rel->at(s.size()), content(s))};
    }, true);
  }
  auto space = frozen_ascending_space(rel);
  return make_learner(
      space, "ascending-conservative",
      [rel, space](std::span<const Datum> s, const Conjecture* prior) {
        Stage t = s.size();
        auto p = rel->at(t);
        NatList c = content(s);
        auto fresh = [&] { return Conjecture{pair_code(least_absent(*p, c), t)}; };
        if (!prior || !prior->hyp) return fresh();
        auto [n0, t0] = pair_decode(*prior->hyp);
        NatList ms;
        for (Nat m = 0; m <= n0; ++m) ms.push_back(m);
        bool frozen = !detail::reps_stable(*rel, ms, t0, t);
        const NatList& w = space->decode(*prior->hyp)->enum_upto(t);
        bool escaped = !is_subset(c, w);
        if (escaped && (frozen || contains(c, rel->rep(n0, t0)))) return fresh();
        return *prior;
      },
      false);
}

// ---------------------------------------------------------------------------
// Behaviourally correct learner for the eta-finite sets

// Index pair(code, tag) -> [D_code]; the tag only makes indices per prefix.
inline NumberingPtr tagged_finite_closures(EqRelPtr rel) {
  return make_numbering(
      [rel](Index i) { return closure_set(rel, finite_set(pair_decode(i).first)); },
      "tagged-closures/" + rel->name(), rel);
}

inline LearnerPtr eta_finite_bc_learner(EqRelPtr rel) {
  return make_learner(
      tagged_finite_closures(rel), "eta-finite-bc",
      [rel](std::span<const Datum> s, const Conjecture* prior) {
        auto p = rel->at(s.size());
        NatList mins;
        for (Nat x : content(s)) mins.push_back(p->find(x));
        normalize(mins);
        auto code = finite_set_code(mins);
        if (!code || *code > (Index{1} << 24)) {
          Conjecture c = prior ? *prior : Conjecture{};
          c.budget_events = 1;
          return c;
        }
        return Conjecture{pair_code(*code, s.size())};
      },
      false);
}

// ---------------------------------------------------------------------------
// Confident learner for the interval family

inline LearnerPtr zeta_confident_learner(EqRelPtr zeta) {
  auto space = zeta_family(zeta);
  return simple_learner(space, "zeta-confident", [zeta, space](std::span<const Datum> s) {
    NatList c = content(s);
    if (c.empty()) return Hypothesis{0};
    Stage t = s.size();
    auto p = zeta->at(t);
    NatList top = p->class_of(c.front());
    for (Nat n = 0; n <= top.back(); ++n)
      if (is_subset(c, space->decode(n)->enum_upto(t))) return Hypothesis{n};
    return Hypothesis{0};
  }, true);
}

// ---------------------------------------------------------------------------
// Union of two learners over a merged numbering

inline LearnerPtr strong_union_confident_learner(LearnerPtr m1, LearnerPtr m2,
                                                 std::function<Index(Index)> f,
                                                 std::function<Index(Index)> g,
                                                 NumberingPtr merged, Stage budget = 200) {
  return make_learner(
      merged, "strong-union(" + m1->name() + "," + m2->name() + ")",
      [=](std::span<const Datum> s, const Conjecture* prior) {
        Conjecture c1 = m1->step(s), c2 = m2->step(s);
        Conjecture out;
        out.budget_events = c1.budget_events + c2.budget_events;
        if (!c1.hyp && !c2.hyp) return out;
        if (!c2.hyp) return out.hyp = f(*c1.hyp), out;
        if (!c1.hyp) return out.hyp = g(*c2.hyp), out;
        Index i = f(*c1.hyp), j = g(*c2.hyp);
        if (i == j) return out.hyp = i, out;
        SetPtr a = merged->decode(i), b = merged->decode(j);
        NatList c = content(s);
        for (Stage st = s.size() + 1; st <= s.size() + budget; ++st) {
          const NatList& xa = a->enum_upto(st);
          const NatList& xb = b->enum_upto(st);
          NatList diff;
          std::set_symmetric_difference(xa.begin(), xa.end(), xb.begin(), xb.end(),
                                        std::back_inserter(diff));
          if (diff.empty()) continue;
          Nat x = diff.front();
          bool in_a = contains(xa, x);
          bool in_c = contains(c, x);
          out.hyp = in_a == in_c ? i : j;
          return out;
        }
        out.hyp = prior ? prior->hyp : Hypothesis{i};
        out.budget_events += 1;
        return out;
      },
      false);
}

// ---------------------------------------------------------------------------
// Vacillatory to explanatory conversion

// 2j -> A_j; 2c+1 -> union of [a_i] for i in D_c.
inline NumberingPtr converter_space(EqRelPtr rel) {
  return make_numbering(
      [rel](Index i) -> SetPtr {
        if (i % 2 == 0) return ascending_set(rel, i / 2);
        NatList d = finite_set(i / 2);
        return make_set(
            [rel, d](Stage s) {
              auto p = rel->at(s);
              NatList out;
              for (Nat k : d) out = set_union(out, p->class_of(p->rep(k)));
              return out;
            },
            "[a_i : i in " + join(d) + "]");
      },
      "converter/" + rel->name(), rel);
}

inline LearnerPtr vac_to_ex_converter(LearnerPtr m, EqRelPtr vartheta) {
  return make_learner(
      converter_space(vartheta), "converter(" + m->name() + ")",
      [m, vartheta](std::span<const Datum> s, const Conjecture* prior) {
        Conjecture out;
        Nat top = 0;
        for (auto& c : m->run(s)) {
          out.budget_events += c.budget_events;
          if (c.hyp) top = std::max<Nat>(top, *c.hyp);
        }
        auto p = vartheta->at(s.size());
        NatList c = content(s);
        if (contains(c, p->rep(top))) return out.hyp = 2 * least_absent(*p, c), out;
        NatList d;
        for (Nat i = 0; i < top; ++i)
          if (contains(c, p->rep(i))) d.push_back(i);
        if (d.size() == top) return out.hyp = 2 * top, out;
        auto code = finite_set_code(d);
        if (!code || *code > (Index{1} << 40)) {
          out.hyp = prior ? prior->hyp : std::nullopt;
          out.budget_events += 1;
          return out;
        }
        return out.hyp = 2 * *code + 1, out;
      },
      false);
}

// ---------------------------------------------------------------------------
// Finite learning

struct SampleResult {
  std::optional<NatList> sample;
  Verdict verdict;
};

// Content seen on the canonical text of target up to the first commitment.
inline SampleResult extract_characteristic_sample(const Learner& fin, SetPtr target,
                                                  std::size_t budget) {
  auto text = canonical_text(std::move(target));
  Sequence seq = text->prefix(budget);
  auto conj = fin.run(seq);
  for (std::size_t n = 0; n < conj.size(); ++n) {
    if (conj[n].hyp) {
      NatList c = content(std::span<const Datum>(seq).first(n + 1));
      return {c, Verdict::holds("committed after " + std::to_string(n + 1) + " data")};
    }
  }
  return {std::nullopt, Verdict::inconclusive("no commitment within " + std::to_string(budget))};
}

// Index 0 -> [a] for a in A (the class A itself); i+1 -> {x_i}, the i-th
// non-member of A.
inline NumberingPtr first_datum_family(EqRelPtr rel, RecursiveSetSpec a) {
  Nat first = 0;
  while (first <= a.window && !a.member(first)) ++first;
  if (first > a.window) throw input_error("set A has no member in the window");
  return make_numbering(
      [rel, a, first](Index i) -> SetPtr {
        if (i == 0) return closure_set(rel, {first});
        Nat seen = 0;
        for (Nat x = 0;; ++x) {
          if (a.member(x)) continue;
          if (seen++ == i - 1) return finite_set_approx({x});
        }
      },
      "first-datum/" + a.label, rel);
}

// ---------------------------------------------------------------------------
// Learners attached to the specific families

struct FirstDatumFinite { RecursiveSetSpec a; };
struct CoSingletonBc { BcNotExFamily family; };
struct OddAscendingClassesLearner {};
struct ChainLearner {
  SetPtr b;
  Nat escape = 0;            // element, or rank when escape_is_rank
  bool escape_is_rank = true;
};
struct NaturalsAtTwoLearner {
  LearnerPtr finite;
  NatList c0, c1;
};
struct CharacteristicSampleFinite {
  std::vector<NatList> samples;
  bool merge_first_two = false;
  Stage check_stage = 200;  // stage at which [F_i] and [F_0 u F_1] are compared
};
struct BoundedCardinalityConfident {};
struct PairsAboveOneLearner {};
struct WeakMonotoneLearner {
  SetPtr b0;
  Nat k = 0;
};

using LearnerSpec =
    std::variant<FirstDatumFinite, CoSingletonBc, OddAscendingClassesLearner, ChainLearner,
                 NaturalsAtTwoLearner, CharacteristicSampleFinite, BoundedCardinalityConfident,
                 PairsAboveOneLearner, WeakMonotoneLearner>;

struct LearnerParams {
  EqRelPtr rel;
  const WTable* w = nullptr;
};

// Index 0 -> empty set; 1 + pair(x,y), x <= y -> {x,y}.
inline NumberingPtr small_sets_space() {
  return make_numbering(
      [](Index i) -> SetPtr {
        if (i == 0) return finite_set_approx({});
        auto [x, y] = pair_decode(i - 1);
        return finite_set_approx({x, y});
      },
      "small-sets", identity_relation());
}

inline NumberingPtr weak_monotone_space(EqRelPtr rel, SetPtr b0, Nat k) {
  return make_numbering(
      [rel, b0, k](Index i) -> SetPtr {
        if (i == 0) return b0;
        if (i == 1) return ascending_set(rel, k + 1);
        auto [n, t] = pair_decode(i - 2);
        NatList d;
        for (Nat m = 0; m <= n + k; ++m) d.push_back(rel->rep(m, t));
        normalize(d);
        auto valid = [rel, d, k, t = t](Stage s) {
          if (s <= t) return true;
          auto p = rel->at(s);
          for (Nat m = 0; m <= k; ++m)
            if (!contains(d, p->rep(m))) return false;
          return true;
        };
        return guard_overwrite(closure_set(rel, d), valid,
                               [rel, k](const NatList&, Stage) { return ascending_set(rel, k + 1); },
                               "[a_m : m <= " + std::to_string(n + k) + "]@" + std::to_string(t));
      },
      "weak-monotone-space/" + rel->name(), rel);
}

inline LearnerPtr make_family_learner(const LearnerSpec& spec, const LearnerParams& params) {
  EqRelPtr rel = params.rel;
  if (!rel) throw input_error("learner needs a relation");
  return std::visit(
      [&](const auto& v) -> LearnerPtr {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FirstDatumFinite>) {
          auto a = v.a;
          return simple_learner(first_datum_family(rel, a), "first-datum-finite",
                                [a](std::span<const Datum> s) -> Hypothesis {
                                  for (const Datum& d : s) {
                                    if (!d) continue;
                                    if (a.member(*d)) return 0;
                                    Index i = 0;
                                    for (Nat x = 0; x < *d; ++x)
                                      if (!a.member(x)) ++i;
                                    return i + 1;
                                  }
                                  return std::nullopt;
                                });
        } else if constexpr (std::is_same_v<T, CoSingletonBc>) {
          if (!params.w) throw input_error("co-singleton learner needs a W-table");
          auto space = build_family(v.family, rel, params.w);
          WTable w = *params.w;
          return simple_learner(space, "cosingleton-bc", [rel, w](std::span<const Datum> s) {
            Stage t = s.size();
            auto p = rel->at(t);
            NatList c = content(s);
            Nat n = least_absent(*p, c);
            Nat m = least_absent(*p, c, n + 1);
            if (m == n + 1) return Hypothesis{4 * n};
            if (w.at(n, t).size() >= m) return Hypothesis{4 * triple_code(n, m, t) + 3};
            return Hypothesis{4 * pair_code(n, t) + 1};
          });
        } else if constexpr (std::is_same_v<T, OddAscendingClassesLearner>) {
          auto space = build_family(OddAscendingAndClasses{}, rel);
          return simple_learner(space, "odd-ascending", [rel](std::span<const Datum> s) {
            Stage t = s.size();
            auto p = rel->at(t);
            NatList c = content(s);
            if (c.empty()) return Hypothesis{0};
            if (contains(c, p->rep(0))) {
              for (Nat n = 0; 2 * n <= c.back() + 1; ++n)
                if (contains(c, p->rep(2 * n)) && !contains(c, p->rep(2 * n + 1)))
                  return Hypothesis{2 * n};
              return Hypothesis{0};
            }
            Nat n = p->rank(c.front());
            return Hypothesis{2 * pair_code(n, epoch_start(*rel, {n}, t)) + 1};
          });
        } else if constexpr (std::is_same_v<T, ChainLearner>) {
          if (!v.b) throw input_error("chain learner needs B");
          auto space = build_family(ChainFamily{v.b}, rel);
          auto reps = std::make_shared<const ChainReps>(v.b, rel);
          Nat esc = v.escape;
          bool by_rank = v.escape_is_rank;
          return simple_learner(space, "chain", [rel, reps, esc, by_rank](std::span<const Datum> s) {
            Stage t = s.size();
            NatList c = content(s);
            Nat e = by_rank ? rel->rep(esc, t) : esc;
            if (contains(c, e)) return Hypothesis{0};
            Nat n = 0;
            for (;; ++n) {
              auto b = reps->b_at(n, t);
              if (!b || !contains(c, *b)) break;
            }
            return Hypothesis{n + 1};
          });
        } else if constexpr (std::is_same_v<T, NaturalsAtTwoLearner>) {
          if (!v.finite) throw input_error("transform learner needs a finite learner");
          auto fin = v.finite;
          NatList both = set_union(v.c0, v.c1);
          auto space = build_family(NaturalsAtTwo{fin->space()}, rel);
          return make_learner(space, "naturals-at-2", [fin, both](std::span<const Datum> s, const Conjecture*) {
            if (is_subset(both, content(s))) return Conjecture{2};
            return fin->step(s);
          }, fin->memoryless());
        } else if constexpr (std::is_same_v<T, CharacteristicSampleFinite>) {
          if (v.samples.empty()) throw input_error("sample learner needs samples");
          auto samples = v.samples;
          bool merged = v.merge_first_two;
          Stage cs = v.check_stage;
          NatList f01 = samples.size() > 1 ? set_union(samples[0], samples[1]) : samples[0];
          auto space = make_numbering(
              [rel, samples, merged, f01](Index i) -> SetPtr {
                if (merged && i <= 1) return closure_set(rel, f01);
                if (i < samples.size()) return closure_set(rel, samples[i]);
                return finite_set_approx({});
              },
              merged ? "samples-merged" : "samples", rel);
          std::vector<bool> below(samples.size(), false);
          if (merged) {
            NatList c01 = closure_of(*rel, f01, cs);
            for (std::size_t i = 2; i < samples.size(); ++i)
              below[i] = is_subset(closure_of(*rel, samples[i], cs), c01);
          }
          return make_learner(
              space, merged ? "sample-finite-merged" : "sample-finite",
              [samples, merged, below](std::span<const Datum> s, const Conjecture* prior) {
                if (prior && prior->hyp) return *prior;
                NatList c = content(s);
                for (std::size_t i = 0; i < samples.size() && i <= s.size(); ++i) {
                  if (!is_subset(samples[i], c)) continue;
                  if (merged && i > 1 && below[i]) continue;
                  return Conjecture{merged && i <= 1 ? Index{0} : Index{i}};
                }
                return Conjecture{};
              },
              false);
        } else if constexpr (std::is_same_v<T, BoundedCardinalityConfident>) {
          return simple_learner(small_sets_space(), "bounded-cardinality", [](std::span<const Datum> s) {
            NatList c = content(s);
            if (c.empty() || c.size() > 2) return Hypothesis{0};
            return Hypothesis{1 + pair_code(c.front(), c.back())};
          });
        } else if constexpr (std::is_same_v<T, PairsAboveOneLearner>) {
          auto space = build_family(AscendingAndPairsAboveOne{}, rel);
          return simple_learner(space, "pairs-above-one", [rel](std::span<const Datum> s) {
            Stage t = s.size();
            auto p = rel->at(t);
            NatList c = content(s);
            if (contains(c, p->rep(0))) return Hypothesis{2 * (least_absent(*p, c, 1) - 1)};
            if (c.empty()) return Hypothesis{0};
            for (Nat n = 0; n + 2 <= c.back(); ++n)
              if (contains(c, p->rep(n + 2)))
                return Hypothesis{2 * pair_code(n, epoch_start(*rel, {1, n + 2}, t)) + 1};
            return Hypothesis{0};
          });
        } else {
          if (!v.b0) throw input_error("weak-monotone learner needs B_0");
          Nat k = v.k;
          auto space = weak_monotone_space(rel, v.b0, k);
          return simple_learner(
              space, "weak-monotone",
              [rel, k](std::span<const Datum> s) {
                Stage t = s.size();
                auto p = rel->at(t);
                NatList c = content(s);
                if (!contains(c, p->rep(k))) return Hypothesis{0};
                Nat top = least_absent(*p, c);
                if (top <= k) return Hypothesis{1};
                Nat n = top - k - 1;
                NatList ms;
                for (Nat m = 0; m <= n + k; ++m) ms.push_back(m);
                return Hypothesis{2 + pair_code(n, epoch_start(*rel, ms, t))};
              },
              true);
        }
      },
      spec);
}

}  // namespace poseq
