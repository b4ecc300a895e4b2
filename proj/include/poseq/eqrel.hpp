#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "core.hpp"
#include "set.hpp"

namespace poseq {

// Equivalence relation on N with finitely many non-singleton classes.
// Untouched naturals are singletons.
class Partition {
 public:
  Nat find(Nat x) const {
    auto it = root_.find(x);
    return it == root_.end() ? x : it->second;
  }

  NatList class_of(Nat x) const {
    Nat m = find(x);
    auto it = classes_.find(m);
    if (it == classes_.end()) return {m};
    return it->second;
  }

  bool same(Nat x, Nat y) const { return find(x) == find(y); }

  // a_n: the n-th class minimum.
  Nat rep(Nat n) const {
    Nat a = n;
    for (Nat y : absorbed_) {
      if (y <= a) ++a;
      else break;
    }
    return a;
  }

  // Position of the class of x in the representative order.
  Nat rank(Nat x) const {
    Nat m = find(x);
    return m - static_cast<Nat>(std::lower_bound(absorbed_.begin(), absorbed_.end(), m) -
                                absorbed_.begin());
  }

  bool merge(Nat x, Nat y) {
    Nat cx = find(x), cy = find(y);
    if (cx == cy) return false;
    Nat lo = std::min(cx, cy), hi = std::max(cx, cy);
    NatList moved = class_of(hi);
    NatList& target = classes_[lo];
    if (target.empty()) target.push_back(lo);
    for (Nat z : moved) root_[z] = lo;
    root_[lo] = lo;
    target = set_union(target, moved);
    classes_.erase(hi);
    absorbed_.insert(std::lower_bound(absorbed_.begin(), absorbed_.end(), hi), hi);
    return true;
  }

  // Largest element that belongs to a non-singleton class, if any.
  std::optional<Nat> max_touched() const {
    if (root_.empty()) return std::nullopt;
    return root_.rbegin()->first;
  }

 private:
  std::map<Nat, Nat> root_;
  std::map<Nat, NatList> classes_;
  NatList absorbed_;
};

// Stage-approximated positive equivalence relation. Stage t is the closure
// of the pairs emitted through t; snapshots are computed in stage order and
// memoized.
class EqRel {
 public:
  explicit EqRel(std::string name) : name_(std::move(name)) {}
  virtual ~EqRel() = default;

  std::shared_ptr<const Partition> at(Stage t) const {
    std::lock_guard<std::mutex> lock(mu_);
    while (snaps_.size() <= t) {
      Stage s = snaps_.size();
      static const Partition empty;
      const Partition& prev = s == 0 ? empty : *snaps_.back();
      auto pairs = step(prev, s);
      std::shared_ptr<Partition> next;
      for (auto [x, y] : pairs) {
        if (prev.same(x, y) || (next && next->same(x, y))) continue;
        if (!next) next = std::make_shared<Partition>(prev);
        next->merge(x, y);
        log_.push_back({s, x, y});
      }
      if (next) snaps_.push_back(std::move(next));
      else if (s == 0) snaps_.push_back(std::make_shared<Partition>());
      else snaps_.push_back(snaps_.back());
    }
    return snaps_[t];
  }

  bool related(Nat x, Nat y, Stage t) const { return at(t)->same(x, y); }
  Nat rep(Nat n, Stage t) const { return at(t)->rep(n); }
  NatList class_at(Nat x, Stage t) const { return at(t)->class_of(x); }

  NatList closure_upto(Nat x, Stage t, Nat bound) const { return upto(class_at(x, t), bound); }

  // Pairs that changed the partition, with the stage they entered at.
  std::vector<std::tuple<Stage, Nat, Nat>> merges_upto(Stage t) const {
    at(t);
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<std::tuple<Stage, Nat, Nat>> out;
    for (auto& e : log_)
      if (std::get<0>(e) <= t) out.push_back(e);
    return out;
  }

  const std::string& name() const { return name_; }

 protected:
  // Pairs entering at stage s, given the partition of stage s-1 (empty
  // partition for s = 0). Called once per stage, in increasing order.
  virtual std::vector<Pair> step(const Partition& prev, Stage s) const = 0;

 private:
  std::string name_;
  mutable std::mutex mu_;
  mutable std::vector<std::shared_ptr<const Partition>> snaps_;
  mutable std::vector<std::tuple<Stage, Nat, Nat>> log_;
};

using EqRelPtr = std::shared_ptr<const EqRel>;

inline bool related_at(const EqRel& rel, Nat x, Nat y, Stage t) { return rel.related(x, y, t); }
inline Nat rep_at(const EqRel& rel, Nat n, Stage t) { return rel.rep(n, t); }
inline Nat rep_limit_hint(const EqRel& rel, Nat n, Stage budget) { return rel.rep(n, budget); }
inline NatList closure_upto(const EqRel& rel, Nat x, Stage t, Nat bound) {
  return rel.closure_upto(x, t, bound);
}

// Union of the stage-t classes of the given elements.
inline NatList closure_of(const EqRel& rel, const NatList& xs, Stage t) {
  auto p = rel.at(t);
  NatList out;
  for (Nat x : xs) {
    if (contains(out, x)) continue;
    out = set_union(out, p->class_of(x));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Relation specs

struct IdentitySpec {};

// A decidable set A. Membership outside [0, window] is only trusted when the
// set is periodic; a finite table says nothing is in A beyond the window.
struct RecursiveSetSpec {
  std::function<bool(Nat)> member;
  Nat window = 20;
  bool finite_table = false;
  std::string label;
};

inline RecursiveSetSpec residue_set(Nat modulus, Nat residue, Nat window = 20) {
  return {[modulus, residue](Nat x) { return x % modulus == residue; }, window, false,
          "x%" + std::to_string(modulus) + "==" + std::to_string(residue)};
}

inline RecursiveSetSpec table_set(NatList members, Nat window) {
  normalize(members);
  return {[members, window](Nat x) { return x <= window && contains(members, x); }, window, true,
          "table" + join(members)};
}

struct FromRecursiveSetSpec {
  RecursiveSetSpec set;
};

struct SymmetricDifferenceSpec {
  SetPtr r;
};

struct ExplicitPairsSpec {
  std::vector<std::tuple<Stage, Nat, Nat>> events;
};

using RelationSpec =
    std::variant<IdentitySpec, FromRecursiveSetSpec, SymmetricDifferenceSpec, ExplicitPairsSpec>;

namespace detail {

class IdentityRel : public EqRel {
 public:
  IdentityRel() : EqRel("identity") {}

 protected:
  std::vector<Pair> step(const Partition&, Stage) const override { return {}; }
};

// x ~ y iff x = y or both are in A. One event per stage: the next pair
// (x < y, both in A) in Cantor order.
class RecursiveSetRel : public EqRel {
 public:
  explicit RecursiveSetRel(RecursiveSetSpec a) : EqRel("recursive:" + a.label), a_(std::move(a)) {}

 protected:
  std::vector<Pair> step(const Partition&, Stage s) const override {
    if (s == 0) return {};
    constexpr Nat kScanCap = Nat{1} << 22;
    for (Nat scanned = 0; scanned < kScanCap; ++scanned, ++cursor_) {
      auto [x, y] = pair_decode(cursor_);
      if (a_.finite_table && x + y > 2 * a_.window) return {};
      if (x < y && a_.member(x) && a_.member(y)) {
        ++cursor_;
        return {{x, y}};
      }
    }
    return {};
  }

 private:
  RecursiveSetSpec a_;
  mutable Nat cursor_ = 0;
};

// x ~ y iff D_x and D_y differ only on elements of R. At stage s every pair
// with code < s is tested against R_s.
class SymmetricDifferenceRel : public EqRel {
 public:
  explicit SymmetricDifferenceRel(SetPtr r) : EqRel("symdiff:" + r->label()), r_(std::move(r)) {}

 protected:
  std::vector<Pair> step(const Partition&, Stage s) const override {
    if (s == 0) return {};
    const NatList& rs = r_->enum_upto(s);
    Index mask = 0;
    for (Nat x : rs)
      if (x < 64) mask |= Index{1} << x;
    Nat from = mask == last_mask_ ? s - 1 : 0;
    last_mask_ = mask;
    std::vector<Pair> out;
    for (Nat c = from; c < s; ++c) {
      auto [x, y] = pair_decode(c);
      if (x < y && ((x ^ y) & ~mask) == 0) out.push_back({x, y});
    }
    return out;
  }

 private:
  SetPtr r_;
  mutable Index last_mask_ = ~Index{0};
};

class ExplicitPairsRel : public EqRel {
 public:
  explicit ExplicitPairsRel(std::vector<std::tuple<Stage, Nat, Nat>> events)
      : EqRel("pairs"), events_(std::move(events)) {}

 protected:
  std::vector<Pair> step(const Partition&, Stage s) const override {
    std::vector<Pair> out;
    for (auto& [st, x, y] : events_)
      if (st == s) out.push_back({x, y});
    return out;
  }

 private:
  std::vector<std::tuple<Stage, Nat, Nat>> events_;
};

}  // namespace detail

inline EqRelPtr identity_relation() { return std::make_shared<detail::IdentityRel>(); }

inline EqRelPtr make_relation(const RelationSpec& spec) {
  return std::visit(
      [](const auto& s) -> EqRelPtr {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IdentitySpec>) {
          return identity_relation();
        } else if constexpr (std::is_same_v<T, FromRecursiveSetSpec>) {
          bool gap = false;
          for (Nat x = 0; x <= s.set.window && !gap; ++x) gap = !s.set.member(x);
          if (!gap)
            throw input_error("recursive set " + s.set.label + " has no non-member in [0," +
                              std::to_string(s.set.window) + "]");
          return std::make_shared<detail::RecursiveSetRel>(s.set);
        } else if constexpr (std::is_same_v<T, SymmetricDifferenceSpec>) {
          if (!s.r) throw input_error("symmetric difference relation needs a set R");
          return std::make_shared<detail::SymmetricDifferenceRel>(s.r);
        } else {
          return std::make_shared<detail::ExplicitPairsRel>(s.events);
        }
      },
      spec);
}

}  // namespace poseq
