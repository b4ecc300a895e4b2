#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace poseq {

using Nat = std::uint64_t;
using Stage = std::uint64_t;
using Index = std::uint64_t;
using Pair = std::pair<Nat, Nat>;

// A datum is a natural or the pause mark (nullopt).
using Datum = std::optional<Nat>;
// A hypothesis is an index or the abstention mark (nullopt).
using Hypothesis = std::optional<Index>;

// Sorted, duplicate-free list of naturals.
using NatList = std::vector<Nat>;

class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cantor pairing (x+y)(x+y+1)/2 + y.
inline Nat pair_code(Nat x, Nat y) { return (x + y) * (x + y + 1) / 2 + y; }

inline Pair pair_decode(Nat c) {
  Nat w = static_cast<Nat>((std::sqrt(8.0L * static_cast<long double>(c) + 1) - 1) / 2);
  while (w * (w + 1) / 2 > c) --w;
  while ((w + 1) * (w + 2) / 2 <= c) ++w;
  Nat y = c - w * (w + 1) / 2;
  return {w - y, y};
}

inline Nat triple_code(Nat a, Nat b, Nat c) { return pair_code(a, pair_code(b, c)); }

struct Triple {
  Nat a, b, c;
};

inline Triple triple_decode(Nat code) {
  auto [a, rest] = pair_decode(code);
  auto [b, c] = pair_decode(rest);
  return {a, b, c};
}

// Canonical finite sets: D_i holds x iff bit x of i is set.
inline NatList finite_set(Index code) {
  NatList out;
  for (Nat x = 0; code != 0; ++x, code >>= 1)
    if (code & 1) out.push_back(x);
  return out;
}

// nullopt when some element does not fit in 64 bits.
inline std::optional<Index> finite_set_code(const NatList& xs) {
  Index code = 0;
  for (Nat x : xs) {
    if (x >= 64) return std::nullopt;
    code |= Index{1} << x;
  }
  return code;
}

inline bool contains(const NatList& xs, Nat x) {
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  return it != xs.end() && *it == x;
}

inline bool is_subset(const NatList& a, const NatList& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline NatList upto(const NatList& xs, Nat bound) {
  return NatList(xs.begin(), std::upper_bound(xs.begin(), xs.end(), bound));
}

inline NatList set_union(const NatList& a, const NatList& b) {
  NatList out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline void normalize(NatList& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

inline std::string join(const NatList& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(xs[i]);
  }
  return s + "}";
}

}  // namespace poseq
