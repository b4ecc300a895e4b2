#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "core.hpp"

namespace poseq {

// A monotone stage-indexed approximation of an r.e. set.
class SetApprox {
 public:
  explicit SetApprox(std::string label = {}) : label_(std::move(label)) {}
  virtual ~SetApprox() = default;

  // Elements enumerated through stage s, sorted ascending.
  const NatList& enum_upto(Stage s) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(s, compute(s)).first->second;
  }

  bool has(Nat x, Stage s) const { return contains(enum_upto(s), x); }
  const std::string& label() const { return label_; }

 protected:
  virtual NatList compute(Stage s) const = 0;

 private:
  std::string label_;
  mutable std::mutex mu_;
  mutable std::map<Stage, NatList> cache_;
};

using SetPtr = std::shared_ptr<const SetApprox>;

class FunctionSet : public SetApprox {
 public:
  FunctionSet(std::function<NatList(Stage)> f, std::string label)
      : SetApprox(std::move(label)), f_(std::move(f)) {}

 protected:
  NatList compute(Stage s) const override {
    NatList out = f_(s);
    normalize(out);
    return out;
  }

 private:
  std::function<NatList(Stage)> f_;
};

inline SetPtr make_set(std::function<NatList(Stage)> f, std::string label) {
  return std::make_shared<FunctionSet>(std::move(f), std::move(label));
}

inline SetPtr finite_set_approx(NatList xs, std::string label = {}) {
  normalize(xs);
  if (label.empty()) label = join(xs);
  return make_set([xs](Stage) { return xs; }, std::move(label));
}

// N, approximated by {0,...,s} at stage s.
inline SetPtr naturals() {
  return make_set(
      [](Stage s) {
        NatList out(s + 1);
        for (Nat i = 0; i <= s; ++i) out[i] = i;
        return out;
      },
      "N");
}

// A set given by (stage, element) events; element joins at its stage.
inline SetPtr event_set(std::vector<std::pair<Stage, Nat>> events, std::string label = "events") {
  return make_set(
      [events](Stage s) {
        NatList out;
        for (auto [st, x] : events)
          if (st <= s) out.push_back(x);
        return out;
      },
      std::move(label));
}

// Stage s computed from the stage s-1 listing; f must only add elements.
class IncrementalSet : public SetApprox {
 public:
  IncrementalSet(std::function<NatList(Stage, const NatList&)> f, std::string label)
      : SetApprox(std::move(label)), f_(std::move(f)) {}

 protected:
  NatList compute(Stage s) const override {
    std::lock_guard<std::mutex> lock(imu_);
    while (history_.size() <= s) {
      static const NatList none;
      NatList next = f_(history_.size(), history_.empty() ? none : history_.back());
      normalize(next);
      history_.push_back(std::move(next));
    }
    return history_[s];
  }

 private:
  std::function<NatList(Stage, const NatList&)> f_;
  mutable std::mutex imu_;
  mutable std::vector<NatList> history_;
};

inline SetPtr make_incremental_set(std::function<NatList(Stage, const NatList&)> f,
                                   std::string label) {
  return std::make_shared<IncrementalSet>(std::move(f), std::move(label));
}

// Guard-and-overwrite: follow `primary` while `valid(s)` holds. At the first
// stage s' where it fails, keep what primary enumerated before s' and switch
// to `fallback(kept, s')`, which must be a superset of the kept elements in
// the limit.
class GuardedSet : public SetApprox {
 public:
  GuardedSet(SetPtr primary, std::function<bool(Stage)> valid,
             std::function<SetPtr(const NatList&, Stage)> fallback, std::string label)
      : SetApprox(std::move(label)),
        primary_(std::move(primary)),
        valid_(std::move(valid)),
        fallback_(std::move(fallback)) {}

  // First stage <= s at which the guard fails.
  std::optional<Stage> failure_upto(Stage s) const {
    std::lock_guard<std::mutex> lock(gmu_);
    while (!failed_ && checked_ <= s) {
      if (!valid_(checked_)) failed_ = checked_;
      else ++checked_;
    }
    if (failed_ && *failed_ <= s) return failed_;
    return std::nullopt;
  }

 protected:
  NatList compute(Stage s) const override {
    auto fail = failure_upto(s);
    if (!fail) return primary_->enum_upto(s);
    NatList kept = *fail == 0 ? NatList{} : primary_->enum_upto(*fail - 1);
    SetPtr fb;
    {
      std::lock_guard<std::mutex> lock(gmu_);
      if (!fb_) fb_ = fallback_(kept, *fail);
      fb = fb_;
    }
    return set_union(kept, fb->enum_upto(s));
  }

 private:
  SetPtr primary_;
  std::function<bool(Stage)> valid_;
  std::function<SetPtr(const NatList&, Stage)> fallback_;
  mutable std::mutex gmu_;
  mutable Stage checked_ = 0;
  mutable std::optional<Stage> failed_;
  mutable SetPtr fb_;
};

inline std::shared_ptr<const GuardedSet> guard_overwrite(
    SetPtr primary, std::function<bool(Stage)> valid,
    std::function<SetPtr(const NatList&, Stage)> fallback, std::string label = "guarded") {
  return std::make_shared<GuardedSet>(std::move(primary), std::move(valid), std::move(fallback),
                                      std::move(label));
}

}  // namespace poseq
