#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "eqrel.hpp"
#include "set.hpp"
#include "verdict.hpp"

namespace poseq {

// A uniformly enumerable indexed family of sets.
class Numbering {
 public:
  Numbering(std::function<SetPtr(Index)> make, std::string name, EqRelPtr rel = nullptr)
      : make_(std::move(make)), name_(std::move(name)), rel_(std::move(rel)) {}

  SetPtr decode(Index i) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(i);
    if (it != cache_.end()) return it->second;
    SetPtr s = make_(i);
    cache_.emplace(i, s);
    return s;
  }

  const std::string& name() const { return name_; }
  const EqRelPtr& relation() const { return rel_; }

 private:
  std::function<SetPtr(Index)> make_;
  std::string name_;
  EqRelPtr rel_;
  mutable std::mutex mu_;
  mutable std::map<Index, SetPtr> cache_;
};

using NumberingPtr = std::shared_ptr<const Numbering>;

inline NumberingPtr make_numbering(std::function<SetPtr(Index)> make, std::string name,
                                   EqRelPtr rel = nullptr) {
  return std::make_shared<Numbering>(std::move(make), std::move(name), std::move(rel));
}

// [a_0,...,a_{n-1}] at stage s.
inline NatList ascending_at(const EqRel& rel, Nat n, Stage s) {
  auto p = rel.at(s);
  NatList out;
  for (Nat m = 0; m < n; ++m) out = set_union(out, p->class_of(p->rep(m)));
  return out;
}

inline SetPtr ascending_set(EqRelPtr rel, Nat n) {
  return make_set([rel, n](Stage s) { return ascending_at(*rel, n, s); },
                  "A_" + std::to_string(n));
}

inline NumberingPtr ascending_family(EqRelPtr rel) {
  return make_numbering([rel](Index n) { return ascending_set(rel, n); },
                        "ascending/" + rel->name(), rel);
}

// [X]_s for a fixed finite X.
inline SetPtr closure_set(EqRelPtr rel, NatList xs) {
  normalize(xs);
  std::string label = "[" + join(xs) + "]";
  return make_set([rel, xs](Stage s) { return closure_of(*rel, xs, s); }, label);
}

// Index i decodes to [D_i].
inline NumberingPtr eta_finite_sets(EqRelPtr rel) {
  return make_numbering([rel](Index i) { return closure_set(rel, finite_set(i)); },
                        "eta-finite/" + rel->name(), rel);
}

inline NumberingPtr eta_closure_numbering(NumberingPtr num, EqRelPtr rel) {
  return make_numbering(
      [num, rel](Index i) {
        SetPtr base = num->decode(i);
        return make_set([base, rel](Stage s) { return closure_of(*rel, base->enum_upto(s), s); },
                        "[" + base->label() + "]");
      },
      "closure/" + num->name(), rel);
}

// ---------------------------------------------------------------------------
// Bounded comparisons

inline bool stable_upto(const SetApprox& a, Stage stage, Nat bound, Stage quiet) {
  if (stage < quiet) return false;
  return upto(a.enum_upto(stage - quiet), bound) == upto(a.enum_upto(stage), bound);
}

inline Verdict equal_upto(const SetPtr& a, const SetPtr& b, const Window& w) {
  if (a.get() == b.get()) return Verdict::holds("same object");
  NatList xa = upto(a->enum_upto(w.stage), w.bound);
  NatList xb = upto(b->enum_upto(w.stage), w.bound);
  bool sa = stable_upto(*a, w.stage, w.bound, w.quiet);
  bool sb = stable_upto(*b, w.stage, w.bound, w.quiet);
  if (xa == xb) {
    if (sa && sb) return Verdict::holds("agree on [0," + std::to_string(w.bound) + "]");
    return Verdict::inconclusive("agree so far but not stable");
  }
  for (Nat x : xa)
    if (!contains(xb, x) && sb)
      return Verdict::violated(std::to_string(x) + " in " + a->label() + " only");
  for (Nat x : xb)
    if (!contains(xa, x) && sa)
      return Verdict::violated(std::to_string(x) + " in " + b->label() + " only");
  return Verdict::inconclusive("differ but neither side is stable");
}

struct OneOneReport {
  Verdict verdict;
  std::size_t resolved = 0;
  std::size_t unresolved = 0;
  std::optional<std::pair<Index, Index>> equal_pair;
};

// All pairs distinct: Holds. Some pair equal: Violated. Otherwise the
// unresolved pairs make it Inconclusive.
inline OneOneReport one_one_upto(const Numbering& num, const std::vector<Index>& indices,
                                 const Window& w) {
  OneOneReport r;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t j = i + 1; j < indices.size(); ++j) {
      Verdict v = equal_upto(num.decode(indices[i]), num.decode(indices[j]), w);
      if (v.is_inconclusive()) {
        ++r.unresolved;
        continue;
      }
      ++r.resolved;
      if (v.is_holds() && !r.equal_pair) r.equal_pair = {indices[i], indices[j]};
    }
  }
  if (r.equal_pair)
    r.verdict = Verdict::violated("indices " + std::to_string(r.equal_pair->first) + " and " +
                                  std::to_string(r.equal_pair->second) + " decode equal sets");
  else if (r.unresolved)
    r.verdict = Verdict::inconclusive(std::to_string(r.unresolved) + " unresolved pairs");
  else
    r.verdict = Verdict::holds(std::to_string(r.resolved) + " pairs distinct");
  return r;
}

// ---------------------------------------------------------------------------
// One-one merge of a superfamily of the ascending family.

struct MergeOptions {
  bool include_naturals = false;  // N gets output index 0
  // Strictly increasing selector f: the base chain is {A_f(i)}.
  std::function<Nat(Nat)> base = [](Nat i) { return i; };
  Stage stage_cap = 1000;  // candidate triples (k,n,t) need t <= stage_cap
  Nat code_cap = Nat{1} << 24;
};

namespace detail {

class KummerMerge : public std::enable_shared_from_this<KummerMerge> {
 public:
  KummerMerge(NumberingPtr e, EqRelPtr rel, MergeOptions opt)
      : e_(std::move(e)), rel_(std::move(rel)), opt_(std::move(opt)) {}

  bool in_even_base(Nat n) const {
    for (Nat i = 0;; ++i) {
      Nat v = opt_.base(2 * i);
      if (v == n) return true;
      if (v > n) return false;
    }
  }

  // Conditions (i) and (ii) for U_{k,n,t}.
  bool guard(Nat k, Nat n, Stage t) const {
    const NatList& ek = e_->decode(k)->enum_upto(t);
    auto p = rel_->at(t);
    if (contains(ek, p->rep(n))) return false;
    if (contains(ek, p->rep(n + 1))) return true;
    if (in_even_base(n)) return false;
    for (Nat m = 0; m < n; ++m)
      if (!contains(ek, p->rep(m))) return false;
    return true;
  }

  bool reps_same(Nat n, Stage t, Stage s) const {
    auto a = rel_->at(t), b = rel_->at(s);
    for (Nat m = 0; m <= n + 1; ++m)
      if (a->rep(m) != b->rep(m)) return false;
    return true;
  }

  // A candidate is live when its guard holds at t and t starts a fresh
  // epoch, so each stable parameter set is listed once.
  bool live(Nat k, Nat n, Stage t) const {
    if (!guard(k, n, t)) return false;
    return t == 0 || !guard(k, n, t - 1) || !reps_same(n, t - 1, t);
  }

  std::optional<Triple> live_candidate(Index i) const {
    std::lock_guard<std::mutex> lock(mu_);
    while (found_.size() <= i && cursor_ < opt_.code_cap) {
      Triple c = triple_decode(cursor_++);
      if (c.c > opt_.stage_cap) continue;
      if (live(c.a, c.b, c.c)) found_.push_back(c);
    }
    if (found_.size() <= i) return std::nullopt;
    return found_[i];
  }

  SetPtr candidate_set(Index i) const {
    auto c = live_candidate(i);
    if (!c) return finite_set_approx({}, "unresolved");
    Nat k = c->a, n = c->b;
    Stage t = c->c;
    SetPtr ek = e_->decode(k);
    Nat witness = rel_->rep(n, t);
    auto self = shared_from_this();
    auto valid = [self, ek, witness, n, t](Stage s) {
      if (s <= t) return true;
      return !ek->has(witness, s) && self->reps_same(n, t, s);
    };
    auto rel = rel_;
    auto base = opt_.base;
    auto fallback = [rel, base](const NatList& kept, Stage) {
      Nat h = kept.empty() ? 0 : kept.back();
      return ascending_set(rel, base(2 * h + 1));
    };
    return guard_overwrite(ek, valid, fallback,
                           "U(" + std::to_string(k) + "," + std::to_string(n) + "," +
                               std::to_string(t) + ")");
  }

 private:
  NumberingPtr e_;
  EqRelPtr rel_;
  MergeOptions opt_;
  mutable std::mutex mu_;
  mutable Nat cursor_ = 0;
  mutable std::vector<Triple> found_;
};

}  // namespace detail

// Output: even slots list A_f(2i); odd slots list the live copies of the
// input sets, each overwritten by an odd-selected ascending set once its
// parameters are refuted.
inline NumberingPtr kummer_merge(NumberingPtr e_family, EqRelPtr rel, MergeOptions opt = {}) {
  bool with_n = opt.include_naturals;
  auto base = opt.base;
  auto impl = std::make_shared<detail::KummerMerge>(std::move(e_family), rel, std::move(opt));
  return make_numbering(
      [impl, rel, with_n, base](Index j) -> SetPtr {
        if (with_n) {
          if (j == 0) return naturals();
          --j;
        }
        if (j % 2 == 0) return ascending_set(rel, base(j));
        return impl->candidate_set(j / 2);
      },
      "merge/" + rel->name(), rel);
}

}  // namespace poseq
