#pragma once

#include <string>

#include "core.hpp"

namespace poseq {

enum class Outcome { Holds, Violated, Inconclusive };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Holds: return "Holds";
    case Outcome::Violated: return "Violated";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "?";
}

// Three-valued finite-horizon outcome. `detail` carries the witness or the
// reason, in a form that can be replayed by hand.
struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  std::string detail;

  static Verdict holds(std::string w) { return {Outcome::Holds, std::move(w)}; }
  static Verdict violated(std::string w) { return {Outcome::Violated, std::move(w)}; }
  static Verdict inconclusive(std::string r) { return {Outcome::Inconclusive, std::move(r)}; }

  bool is_holds() const { return outcome == Outcome::Holds; }
  bool is_violated() const { return outcome == Outcome::Violated; }
  bool is_inconclusive() const { return outcome == Outcome::Inconclusive; }

  std::string str() const {
    return detail.empty() ? outcome_name(outcome)
                          : std::string(outcome_name(outcome)) + " (" + detail + ")";
  }
};

// Verification knobs shared by set comparisons and criteria.
struct Window {
  Stage stage = 1000;  // budget stage at which sets are read
  Nat bound = 100;     // only elements <= bound are compared
  Stage quiet = 50;    // stability period required before trusting a reading
};

}  // namespace poseq
