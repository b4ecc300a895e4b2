#pragma once

#include <memory>
#include <mutex>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "eqrel.hpp"
#include "set.hpp"

namespace poseq {

using Sequence = std::vector<Datum>;

inline NatList content(std::span<const Datum> sigma) {
  NatList out;
  for (const Datum& d : sigma)
    if (d) out.push_back(*d);
  normalize(out);
  return out;
}

inline std::string datum_str(const Datum& d) { return d ? std::to_string(*d) : "#"; }

inline std::string sequence_str(std::span<const Datum> sigma) {
  std::string s = "(";
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (i) s += ",";
    s += datum_str(sigma[i]);
  }
  return s + ")";
}

// A text is generated left to right and memoized, so generators may keep
// state between positions.
class Text {
 public:
  explicit Text(std::string descriptor) : descriptor_(std::move(descriptor)) {}
  virtual ~Text() = default;

  Datum at(std::size_t pos) const {
    std::lock_guard<std::mutex> lock(mu_);
    extend(pos + 1);
    return memo_[pos];
  }

  Sequence prefix(std::size_t len) const {
    std::lock_guard<std::mutex> lock(mu_);
    extend(len);
    return Sequence(memo_.begin(), memo_.begin() + static_cast<std::ptrdiff_t>(len));
  }

  const std::string& descriptor() const { return descriptor_; }

 protected:
  // Called for pos = 0, 1, 2, ... in order.
  virtual Datum next(std::size_t pos) const = 0;

 private:
  void extend(std::size_t len) const {
    while (memo_.size() < len) memo_.push_back(next(memo_.size()));
  }

  std::string descriptor_;
  mutable std::mutex mu_;
  mutable Sequence memo_;
};

using TextPtr = std::shared_ptr<const Text>;

namespace detail {

class CanonicalText : public Text {
 public:
  explicit CanonicalText(SetPtr s) : Text("canonical(" + s->label() + ")"), s_(std::move(s)) {}

 protected:
  Datum next(std::size_t pos) const override {
    for (Nat x : s_->enum_upto(pos))
      if (!contains(emitted_, x)) {
        emitted_.insert(std::lower_bound(emitted_.begin(), emitted_.end(), x), x);
        return x;
      }
    return std::nullopt;
  }

 private:
  SetPtr s_;
  mutable NatList emitted_;
};

class SeededText : public Text {
 public:
  SeededText(SetPtr s, std::uint64_t seed, double pause_rate)
      : Text("seeded(" + s->label() + "," + std::to_string(seed) + ")"),
        s_(std::move(s)),
        rng_(seed),
        pause_rate_(pause_rate) {}

 protected:
  // Fresh elements are drawn among the three least not yet emitted, so every
  // element is eventually emitted.
  Datum next(std::size_t pos) const override {
    const NatList& avail = s_->enum_upto(pos);
    if (avail.empty() || unit() < pause_rate_) return std::nullopt;
    NatList fresh;
    for (Nat x : avail) {
      if (!contains(emitted_, x)) fresh.push_back(x);
      if (fresh.size() == 3) break;
    }
    if (!fresh.empty() && (emitted_.empty() || unit() < 0.5)) {
      Nat x = fresh[rng_() % fresh.size()];
      emitted_.insert(std::lower_bound(emitted_.begin(), emitted_.end(), x), x);
      return x;
    }
    if (emitted_.empty()) return std::nullopt;
    return emitted_[rng_() % emitted_.size()];
  }

 private:
  double unit() const { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  SetPtr s_;
  mutable std::mt19937_64 rng_;
  double pause_rate_;
  mutable NatList emitted_;
};

class FixedText : public Text {
 public:
  enum class Tail { Pause, RepeatLast, Cycle };

  FixedText(Sequence prefix, Tail tail)
      : Text("fixed" + sequence_str(prefix)), prefix_(std::move(prefix)), tail_(tail) {}

 protected:
  Datum next(std::size_t pos) const override {
    if (pos < prefix_.size()) return prefix_[pos];
    if (prefix_.empty()) return std::nullopt;
    switch (tail_) {
      case Tail::Pause: return std::nullopt;
      case Tail::RepeatLast: return prefix_.back();
      case Tail::Cycle: return prefix_[pos % prefix_.size()];
    }
    return std::nullopt;
  }

 private:
  Sequence prefix_;
  Tail tail_;
};

class ConcatText : public Text {
 public:
  ConcatText(Sequence head, TextPtr rest)
      : Text(sequence_str(head) + "+" + rest->descriptor()),
        head_(std::move(head)),
        rest_(std::move(rest)) {}

 protected:
  Datum next(std::size_t pos) const override {
    if (pos < head_.size()) return head_[pos];
    return rest_->at(pos - head_.size());
  }

 private:
  Sequence head_;
  TextPtr rest_;
};

// After sigma, position p emits the least unseen element of [cnt(sigma)]_p.
class ClosureText : public Text {
 public:
  ClosureText(Sequence sigma, EqRelPtr rel)
      : Text("closure" + sequence_str(sigma) + "/" + rel->name()),
        sigma_(std::move(sigma)),
        base_(content(sigma_)),
        rel_(std::move(rel)),
        seen_(base_) {}

 protected:
  Datum next(std::size_t pos) const override {
    if (pos < sigma_.size()) return sigma_[pos];
    for (Nat x : closure_of(*rel_, base_, pos))
      if (!contains(seen_, x)) {
        seen_.insert(std::lower_bound(seen_.begin(), seen_.end(), x), x);
        return x;
      }
    return std::nullopt;
  }

 private:
  Sequence sigma_;
  NatList base_;
  EqRelPtr rel_;
  mutable NatList seen_;
};

}  // namespace detail

inline TextPtr canonical_text(SetPtr s) { return std::make_shared<detail::CanonicalText>(std::move(s)); }

inline TextPtr seeded_text(SetPtr s, std::uint64_t seed, double pause_rate = 0.2) {
  if (!(pause_rate >= 0.0 && pause_rate < 1.0)) throw input_error("pause_rate must lie in [0,1)");
  return std::make_shared<detail::SeededText>(std::move(s), seed, pause_rate);
}

using TextTail = detail::FixedText::Tail;

inline TextPtr fixed_text(Sequence prefix, TextTail tail = TextTail::Pause) {
  return std::make_shared<detail::FixedText>(std::move(prefix), tail);
}

inline TextPtr concat_text(Sequence head, TextPtr rest) {
  return std::make_shared<detail::ConcatText>(std::move(head), std::move(rest));
}

inline TextPtr complete_by_closure(Sequence sigma, EqRelPtr rel) {
  return std::make_shared<detail::ClosureText>(std::move(sigma), std::move(rel));
}

}  // namespace poseq
