#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "eqrel.hpp"
#include "numbering.hpp"
#include "set.hpp"
#include "verdict.hpp"

namespace poseq {

// ---------------------------------------------------------------------------
// W-tables: finite desk-scale stand-ins for an r.e. sequence W_0, W_1, ...

class WTable {
 public:
  WTable() = default;

  void add(Index n, Stage s, Nat x) {
    auto& ev = events_[n];
    ev.push_back({s, x});
    std::sort(ev.begin(), ev.end());
  }

  // W_{n,s}. Indices outside the table are empty.
  NatList at(Index n, Stage s) const {
    NatList out;
    auto it = events_.find(n);
    if (it == events_.end()) return out;
    for (auto [st, x] : it->second)
      if (st <= s) out.push_back(x);
    normalize(out);
    return out;
  }

  Stage settle_stage() const {
    Stage s = 0;
    for (auto& [n, ev] : events_)
      for (auto [st, x] : ev) s = std::max(s, st);
    return s;
  }

  std::vector<Index> indices() const {
    std::vector<Index> out;
    for (auto& [n, ev] : events_) out.push_back(n);
    return out;
  }

  bool empty() const { return events_.empty(); }

  SetPtr set(Index n) const {
    auto self = *this;
    return make_set([self, n](Stage s) { return self.at(n, s); }, "W_" + std::to_string(n));
  }

 private:
  std::map<Index, std::vector<std::pair<Stage, Nat>>> events_;
};

// Number of stages t < upto with a_{m,t} != a_{m,t+1}.
inline std::size_t rep_change_count(const EqRel& rel, Nat m, Stage upto) {
  std::size_t c = 0;
  for (Stage t = 0; t < upto; ++t)
    if (rel.rep(m, t) != rel.rep(m, t + 1)) ++c;
  return c;
}

// ---------------------------------------------------------------------------
// The diagonal relation built against a W-table.

namespace detail {

// The search at stage u reads W_{n,u} and the stage-u partition; the chosen
// merge is visible from stage u+1 on.
class VarthetaRel : public EqRel {
 public:
  explicit VarthetaRel(WTable w) : EqRel("vartheta"), w_(std::move(w)), idx_(w_.indices()) {}

 protected:
  std::vector<Pair> step(const Partition& prev, Stage s) const override {
    if (s == 0) return {};
    Stage u = s - 1;
    struct Choice {
      Nat l, n, k;
    };
    std::optional<Choice> best;
    for (Index n : idx_) {
      if (n >= u) break;
      NatList hit;
      for (Nat x : w_.at(n, u)) hit.push_back(prev.rank(x));
      normalize(hit);
      Nat k = 0;
      while (contains(hit, k)) ++k;
      if (k >= u) continue;
      for (Nat l : hit) {
        if (l >= u) break;
        if (l <= n || l <= k) continue;
        if (!best || l < best->l || (l == best->l && n < best->n)) best = Choice{l, n, k};
        break;
      }
    }
    if (!best) return {};
    return {{prev.rep(best->k), prev.rep(best->l)}};
  }

 private:
  WTable w_;
  std::vector<Index> idx_;
};

}  // namespace detail

inline EqRelPtr build_vartheta(const WTable& w) { return std::make_shared<detail::VarthetaRel>(w); }

enum class ClosedShape { SubsetOfOwnAscending, EqualsAscending, Everything, NotClosed, None };

inline const char* closed_shape_name(ClosedShape b) {
  switch (b) {
    case ClosedShape::SubsetOfOwnAscending: return "subset-of-A_n";
    case ClosedShape::EqualsAscending: return "equals-A_m";
    case ClosedShape::Everything: return "everything";
    case ClosedShape::NotClosed: return "not-closed";
    case ClosedShape::None: return "none";
  }
  return "?";
}

struct ClosedShapeEntry {
  Index n = 0;
  ClosedShape branch = ClosedShape::None;
  Nat m = 0;  // for EqualsAscending
  Verdict verdict;
};

// Trichotomy for every closed table entry, read at `budget` on [0,bound].
inline std::vector<ClosedShapeEntry> check_closed_shapes(const EqRel& vartheta, const WTable& w, Nat bound,
                                             Stage budget, Stage quiet = 50) {
  std::vector<ClosedShapeEntry> out;
  auto p = vartheta.at(budget);
  auto early = vartheta.at(budget >= quiet ? budget - quiet : 0);
  bool settled = budget >= quiet && budget - quiet >= w.settle_stage();
  for (Nat x = 0; x <= bound && settled; ++x)
    if (p->find(x) != early->find(x)) settled = false;
  for (Index n : w.indices()) {
    ClosedShapeEntry e;
    e.n = n;
    NatList wn = upto(w.at(n, budget), bound);
    if (!settled) {
      e.verdict = Verdict::inconclusive("relation not settled on the window");
      out.push_back(e);
      continue;
    }
    bool closed = true;
    for (Nat x : wn)
      if (!is_subset(upto(p->class_of(x), bound), wn)) closed = false;
    if (!closed) {
      e.branch = ClosedShape::NotClosed;
      e.verdict = Verdict::holds("not closed, skipped");
      out.push_back(e);
      continue;
    }
    auto asc = [&](Nat m) { return upto(ascending_at(vartheta, m, budget), bound); };
    if (is_subset(wn, asc(n))) {
      e.branch = ClosedShape::SubsetOfOwnAscending;
    } else {
      for (Nat m = n; m <= bound + 1; ++m) {
        if (asc(m) == wn) {
          e.branch = ClosedShape::EqualsAscending;
          e.m = m;
          break;
        }
      }
      if (e.branch == ClosedShape::None && wn.size() == bound + 1)
        e.branch = ClosedShape::Everything;
    }
    std::string tag = "W_" + std::to_string(n) + "=" + join(wn);
    if (e.branch == ClosedShape::None)
      e.verdict = Verdict::violated(tag + " fits no branch");
    else
      e.verdict = Verdict::holds(tag + " " + closed_shape_name(e.branch) +
                                 (e.branch == ClosedShape::EqualsAscending
                                      ? " m=" + std::to_string(e.m)
                                      : ""));
    out.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interval relations from a co-infinite set Z with 0 not in Z.

namespace detail {

class ZetaRel : public EqRel {
 public:
  explicit ZetaRel(SetPtr z) : EqRel("zeta:" + z->label()), z_(std::move(z)) {}

 protected:
  std::vector<Pair> step(const Partition&, Stage s) const override {
    const NatList& now = z_->enum_upto(s);
    static const NatList none;
    const NatList& before = s == 0 ? none : z_->enum_upto(s - 1);
    std::vector<Pair> out;
    for (Nat z : now)
      if (z > 0 && !contains(before, z)) out.push_back({z - 1, z});
    return out;
  }

 private:
  SetPtr z_;
};

}  // namespace detail

inline EqRelPtr build_zeta(SetPtr z, Stage check_upto = 1000) {
  if (!z) throw input_error("interval relation needs a set Z");
  if (z->has(0, check_upto)) throw input_error("Z must not enumerate 0");
  return std::make_shared<detail::ZetaRel>(std::move(z));
}

// B_n = [n] u [a_n] u {n,...,a_n}.
inline NumberingPtr zeta_family(EqRelPtr zeta) {
  return make_numbering(
      [zeta](Index n) {
        return make_set(
            [zeta, n](Stage s) {
              auto p = zeta->at(s);
              Nat a = p->rep(n);
              NatList out = set_union(p->class_of(n), p->class_of(a));
              for (Nat x = n; x <= a; ++x) out.push_back(x);
              return out;
            },
            "B_" + std::to_string(n));
      },
      "zeta-family", zeta);
}

inline NumberingPtr zeta_family_of(SetPtr z) { return zeta_family(build_zeta(std::move(z))); }

// Finite-domination stand-in: one element per stage, always the least
// non-element a_n (1 <= n <= window) with a_n <= max_f f(n). tables[i][n]
// is f_i(n).
inline SetPtr dense_simple_standin(std::vector<NatList> tables, Nat window) {
  for (auto& t : tables)
    if (t.size() <= window) throw input_error("function table shorter than the window");
  return make_incremental_set(
      [tables, window](Stage s, const NatList& prev) {
        NatList out = prev;
        if (s == 0 || tables.empty()) return out;
        Nat n = 0, x = 0;
        for (;; ++x) {
          if (x > 0 && contains(out, x)) continue;
          if (n >= 1) {
            Nat need = 0;
            for (auto& t : tables) need = std::max(need, t[n]);
            if (x <= need) {
              out.push_back(x);
              return out;
            }
          }
          if (++n > window) return out;
        }
      },
      "Z-standin");
}

// b_{n,s}: the n-th element of B, in enumeration order, not eta_s-related to
// an earlier-listed element.
class ChainReps {
 public:
  ChainReps(SetPtr b, EqRelPtr rel) : b_(std::move(b)), rel_(std::move(rel)) {}

  std::optional<Nat> b_at(Nat n, Stage s) const {
    const NatList& reps = reps_at(s);
    if (n >= reps.size()) return std::nullopt;
    return reps[n];
  }

  const SetPtr& set() const { return b_; }
  const EqRelPtr& relation() const { return rel_; }

 private:
  const NatList& reps_at(Stage s) const {
    std::lock_guard<std::mutex> lock(mu_);
    while (order_by_stage_.size() <= s) {
      Stage st = order_by_stage_.size();
      NatList order = st == 0 ? NatList{} : order_by_stage_.back();
      static const NatList none;
      const NatList& before = st == 0 ? none : b_->enum_upto(st - 1);
      for (Nat x : b_->enum_upto(st))
        if (!contains(before, x)) order.push_back(x);
      order_by_stage_.push_back(std::move(order));
    }
    auto it = reps_.find(s);
    if (it != reps_.end()) return it->second;
    auto p = rel_->at(s);
    NatList reps;
    for (Nat x : order_by_stage_[s]) {
      bool fresh = true;
      for (Nat y : reps)
        if (p->same(x, y)) fresh = false;
      if (fresh) reps.push_back(x);
    }
    return reps_.emplace(s, std::move(reps)).first->second;
  }

  SetPtr b_;
  EqRelPtr rel_;
  mutable std::mutex mu_;
  mutable std::vector<NatList> order_by_stage_;  // unsorted: enumeration order
  mutable std::map<Stage, NatList> reps_;
};

using ChainRepsPtr = std::shared_ptr<const ChainReps>;

// C_n = {x : exists m < n, s with x eta_s b_{m,s}}.
inline SetPtr chain_set(ChainRepsPtr reps, Nat n) {
  return make_incremental_set(
      [reps, n](Stage s, const NatList& prev) {
        NatList out = prev;
        auto p = reps->relation()->at(s);
        for (Nat m = 0; m < n; ++m)
          if (auto b = reps->b_at(m, s)) out = set_union(out, p->class_of(*b));
        return out;
      },
      "C_" + std::to_string(n));
}

// ---------------------------------------------------------------------------
// Families

// Sequence learner as used inside a family construction.
using SequenceLearner = std::function<Hypothesis(std::span<const Datum>)>;

// Ascending member holding every element of `kept`: A_{max(kept)+1}, with
// max of the empty set read as 1.
inline SetPtr ascending_cover(EqRelPtr rel, const NatList& kept) {
  return ascending_set(rel, (kept.empty() ? 1 : kept.back()) + 1);
}

struct EtaFiniteSetsFamily {};

// All A_n, the co-singletons F_n and the finite-window sets B_{n,m}.
// Index 4j+0 -> A_j; 4j+1 -> F guess (n,t) = pair(j); 4j+2 -> B_{n,m}
// from triple(j) = (n,m,t), overwritten by an ascending set; 4j+3 -> the
// same B_{n,m} but falling back to the F guess (n,t).
struct BcNotExFamily {
  SequenceLearner learner;
  Nat seq_len = 2;      // stabilising-sequence candidates up to this length
  Nat probe_len = 2;    // probe extensions up to this length
  Nat alphabet_cap = 3; // class elements used as letters
};

struct OddAscendingAndClasses {};        // 2n -> A_{2n+1}; 2<n,s>+1 -> [a_{n,s}]
struct EvenAscendingAndPairs {};         // 2n -> A_{2n+2}; 2<m,n,s>+1 -> [a_m, a_{m+n+1}]
struct ShiftedAscending { Nat k = 0; };  // n -> A_{n+k+1}
struct ChainFamily { SetPtr b; };        // 0 -> N; n+1 -> C_n
struct NaturalsAtTwo { NumberingPtr base; };
struct AscendingAndPairsAboveOne {};     // 2n -> A_{n+1}; 2<n,t>+1 -> [a_1, a_{n+2}]
struct FiniteWitnessFamily {};           // <n,0> -> A_{2n}; <n,m+1> -> A_{2n+1} while |W_n| <= m
struct WeakMonotoneFamily { SetPtr b0; Nat k = 0; };  // 0 -> B_0; n+1 -> A_{n+k+1}

using FamilySpec =
    std::variant<EtaFiniteSetsFamily, BcNotExFamily, OddAscendingAndClasses, EvenAscendingAndPairs,
                 ShiftedAscending, ChainFamily, NaturalsAtTwo, AscendingAndPairsAboveOne,
                 FiniteWitnessFamily, WeakMonotoneFamily>;

namespace detail {

inline bool reps_stable(const EqRel& rel, const NatList& ms, Stage t, Stage s) {
  auto a = rel.at(t), b = rel.at(s);
  for (Nat m : ms)
    if (a->rep(m) != b->rep(m)) return false;
  return true;
}

// [a_{m,t} : m in ms], kept while those representatives do not move.
inline SetPtr guarded_rep_closure(EqRelPtr rel, NatList ms, Stage t,
                                  std::function<SetPtr(const NatList&, Stage)> fallback,
                                  std::string label) {
  NatList xs;
  for (Nat m : ms) xs.push_back(rel->rep(m, t));
  auto body = closure_set(rel, xs);
  auto valid = [rel, ms, t](Stage s) { return s <= t || reps_stable(*rel, ms, t, s); };
  return guard_overwrite(body, valid, std::move(fallback), std::move(label));
}

// Stage-wise guesses for the co-singleton construction.
class CoSingletonGuess : public std::enable_shared_from_this<CoSingletonGuess> {
 public:
  CoSingletonGuess(EqRelPtr rel, BcNotExFamily p) : rel_(std::move(rel)), p_(std::move(p)) {}

  struct Guess {
    Nat a = 0;
    std::optional<std::vector<Datum>> tau;
    bool operator==(const Guess&) const = default;
  };

  // Letters: the first few members of [a]_t plus the pause.
  std::vector<Datum> alphabet(const NatList& cls) const {
    std::vector<Datum> out{std::nullopt};
    for (std::size_t i = 0; i < cls.size() && i < p_.alphabet_cap; ++i) out.push_back(cls[i]);
    return out;
  }

  static void sequences(const std::vector<Datum>& alpha, Nat max_len,
                        const std::function<bool(const std::vector<Datum>&)>& visit) {
    std::vector<Datum> cur;
    for (Nat len = 0; len <= max_len; ++len) {
      std::vector<std::size_t> digits(len, 0);
      for (;;) {
        cur.clear();
        for (auto d : digits) cur.push_back(alpha[d]);
        if (visit(cur)) return;
        std::size_t i = len;
        while (i > 0 && ++digits[i - 1] == alpha.size()) digits[--i] = 0;
        if (i == 0) break;
      }
    }
  }

  Guess guess(Nat n, Stage t) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find({n, t});
      if (it != cache_.end()) return it->second;
    }
    Guess g;
    g.a = rel_->rep(n, t);
    auto alpha = alphabet(rel_->class_at(g.a, t));
    Nat probe = std::min<Nat>(t, p_.probe_len);
    sequences(alpha, p_.seq_len, [&](const std::vector<Datum>& tau) {
      Hypothesis h = p_.learner(tau);
      bool ok = true;
      sequences(alpha, probe, [&](const std::vector<Datum>& ext) {
        std::vector<Datum> both = tau;
        both.insert(both.end(), ext.begin(), ext.end());
        if (p_.learner(both) != h) ok = false;
        return !ok;
      });
      if (ok) g.tau = tau;
      return ok;
    });
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(std::make_pair(n, t), g);
    return g;
  }

  // W_e for the guess: x <= u such that some extension over the letters of
  // [a] and [x] moves the learner off M(tau).
  SetPtr guess_set(Guess g) const {
    auto self = shared_from_this();
    return make_incremental_set(
        [self, g](Stage u, const NatList& prev) {
          NatList out = prev;
          std::vector<Datum> tau = g.tau.value_or(std::vector<Datum>{});
          Hypothesis base = self->p_.learner(tau);
          auto p = self->rel_->at(u);
          for (Nat x = 0; x <= u; ++x) {
            if (contains(out, x)) continue;
            auto alpha = self->alphabet(p->class_of(g.a));
            auto more = self->alphabet(p->class_of(x));
            alpha.insert(alpha.end(), more.begin() + 1, more.end());
            bool moved = false;
            std::vector<Datum> head = tau;
            head.push_back(x);
            sequences(alpha, self->p_.probe_len, [&](const std::vector<Datum>& ext) {
              std::vector<Datum> both = head;
              both.insert(both.end(), ext.begin(), ext.end());
              moved = self->p_.learner(both) != base;
              return moved;
            });
            if (moved) out.push_back(x);
          }
          return out;
        },
        "W_e(" + std::to_string(g.a) + ")");
  }

  // F from (n,t): follow the stage-t guess until the guess changes.
  SetPtr cosingleton(Nat n, Stage t) const {
    auto self = shared_from_this();
    Guess g = guess(n, t);
    auto rel = rel_;
    auto valid = [self, g, n, t](Stage s) { return s <= t || self->guess(n, s) == g; };
    return guard_overwrite(guess_set(g), valid,
                           [rel](const NatList& kept, Stage) { return ascending_cover(rel, kept); },
                           "F(" + std::to_string(n) + "," + std::to_string(t) + ")");
  }

 private:
  EqRelPtr rel_;
  BcNotExFamily p_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<Nat, Stage>, Guess> cache_;
};

inline SetPtr finite_window_set(EqRelPtr rel, const WTable& w, Nat n, Nat m, Stage t,
                                std::function<SetPtr(const NatList&, Stage)> fallback) {
  NatList ms;
  for (Nat k = 0; k <= m; ++k) ms.push_back(k);
  NatList members;
  for (Nat k = 0; k < m; ++k)
    if (k != n) members.push_back(k);
  bool ok_at_t = m > n && w.at(n, t).size() >= m;
  NatList wt = w.at(n, t);
  NatList tx;
  for (Nat k : members) tx.push_back(rel->rep(k, t));
  auto fixed = closure_set(rel, tx);
  auto valid = [rel, w, n, t, ms, wt, ok_at_t](Stage s) {
    if (!ok_at_t) return false;
    if (s <= t) return true;
    return reps_stable(*rel, ms, t, s) && w.at(n, s) == wt;
  };
  return guard_overwrite(fixed, valid, std::move(fallback),
                         "B(" + std::to_string(n) + "," + std::to_string(m) + "," +
                             std::to_string(t) + ")");
}

}  // namespace detail

inline NumberingPtr build_family(const FamilySpec& spec, EqRelPtr rel,
                                 const WTable* w = nullptr) {
  if (!rel) throw input_error("family needs a relation");
  return std::visit(
      [&](const auto& f) -> NumberingPtr {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, EtaFiniteSetsFamily>) {
          return eta_finite_sets(rel);
        } else if constexpr (std::is_same_v<T, BcNotExFamily>) {
          if (!f.learner) throw input_error("co-singleton family needs a learner");
          if (!w) throw input_error("co-singleton family needs a W-table");
          auto guess = std::make_shared<detail::CoSingletonGuess>(rel, f);
          WTable table = *w;
          return make_numbering(
              [rel, guess, table](Index i) -> SetPtr {
                Index j = i / 4;
                switch (i % 4) {
                  case 0: return ascending_set(rel, j);
                  case 1: {
                    auto [n, t] = pair_decode(j);
                    return guess->cosingleton(n, t);
                  }
                  default: {
                    Triple c = triple_decode(j);
                    if (i % 4 == 2)
                      return detail::finite_window_set(
                          rel, table, c.a, c.b, c.c,
                          [rel](const NatList& kept, Stage) { return ascending_cover(rel, kept); });
                    SetPtr f = guess->cosingleton(c.a, c.c);
                    return detail::finite_window_set(rel, table, c.a, c.b, c.c,
                                                     [f](const NatList&, Stage) { return f; });
                  }
                }
              },
              "cosingletons/" + rel->name(), rel);
        } else if constexpr (std::is_same_v<T, OddAscendingAndClasses>) {
          return make_numbering(
              [rel](Index i) -> SetPtr {
                if (i % 2 == 0) return ascending_set(rel, i + 1);
                auto [n, s] = pair_decode(i / 2);
                return closure_set(rel, {rel->rep(n, s)});
              },
              "odd-ascending/" + rel->name(), rel);
        } else if constexpr (std::is_same_v<T, EvenAscendingAndPairs>) {
          return make_numbering(
              [rel](Index i) -> SetPtr {
                if (i % 2 == 0) return ascending_set(rel, i + 2);
                Triple c = triple_decode(i / 2);
                Nat m = c.a, n = c.b;
                Stage s = c.c;
                // Least A_{2q+2} covering the kept elements, read where the
                // guard failed.
                auto fallback = [rel](const NatList& kept, Stage fail) -> SetPtr {
                  Nat h = kept.empty() ? 0 : kept.back();
                  for (Nat q = 0; q <= h; ++q)
                    if (is_subset(kept, ascending_at(*rel, 2 * q + 2, fail)))
                      return ascending_set(rel, 2 * q + 2);
                  return ascending_set(rel, 2 * h + 2);
                };
                return detail::guarded_rep_closure(rel, {m, m + n + 1}, s, fallback,
                                                   "[a_" + std::to_string(m) + ",a_" +
                                                       std::to_string(m + n + 1) + "]");
              },
              "even-ascending/" + rel->name(), rel);
        } else if constexpr (std::is_same_v<T, ShiftedAscending>) {
          Nat k = f.k;
          return make_numbering([rel, k](Index n) { return ascending_set(rel, n + k + 1); },
                                "shifted-ascending/" + rel->name(), rel);
        } else if constexpr (std::is_same_v<T, ChainFamily>) {
          if (!f.b) throw input_error("chain family needs a set B");
          auto reps = std::make_shared<const ChainReps>(f.b, rel);
          return make_numbering(
              [reps](Index i) -> SetPtr {
                if (i == 0) return naturals();
                return chain_set(reps, i - 1);
              },
              "chain/" + f.b->label(), rel);
        } else if constexpr (std::is_same_v<T, NaturalsAtTwo>) {
          if (!f.base) throw input_error("transform needs a base family");
          auto base = f.base;
          return make_numbering(
              [base](Index i) -> SetPtr { return i == 2 ? naturals() : base->decode(i); },
              "naturals-at-2/" + base->name(), rel);
        } else if constexpr (std::is_same_v<T, AscendingAndPairsAboveOne>) {
          return make_numbering(
              [rel](Index i) -> SetPtr {
                if (i % 2 == 0) return ascending_set(rel, i / 2 + 1);
                auto [n, t] = pair_decode(i / 2);
                return detail::guarded_rep_closure(
                    rel, {1, n + 2}, t,
                    [rel](const NatList& kept, Stage) { return ascending_cover(rel, kept); },
                    "[a_1,a_" + std::to_string(n + 2) + "]");
              },
              "pairs-above-one/" + rel->name(), rel);
        } else if constexpr (std::is_same_v<T, FiniteWitnessFamily>) {
          if (!w) throw input_error("finite-witness family needs a W-table");
          WTable table = *w;
          return make_numbering(
              [rel, table](Index i) -> SetPtr {
                auto [n, r] = pair_decode(i);
                if (r == 0) return ascending_set(rel, 2 * n);
                Nat m = r - 1;
                auto valid = [table, n = n, m](Stage s) { return table.at(n, s).size() <= m; };
                Nat nn = n;
                return guard_overwrite(
                    ascending_set(rel, 2 * nn + 1), valid,
                    [rel, nn](const NatList&, Stage) { return ascending_set(rel, 2 * nn + 2); },
                    "L<" + std::to_string(nn) + "," + std::to_string(r) + ">");
              },
              "finite-witness/" + rel->name(), rel);
        } else {
          if (!f.b0) throw input_error("weak-monotone family needs B_0");
          SetPtr b0 = f.b0;
          Nat k = f.k;
          return make_numbering(
              [rel, b0, k](Index i) -> SetPtr {
                if (i == 0) return b0;
                return ascending_set(rel, i - 1 + k + 1);
              },
              "weak-monotone/" + b0->label(), rel);
        }
      },
      spec);
}

}  // namespace poseq
