#pragma once

#include <string>

#include "criteria.hpp"

namespace poseq {

struct AdversaryBudget {
  std::size_t evaluations = 20000;  // learner calls over all rounds
  std::size_t rounds = 8;           // chain members to visit
  std::size_t seq_len = 3;          // longest string tried per round
  std::size_t alphabet_cap = 16;
  Nat first = 1;                    // index of the first chain member
};

struct AdversaryResult {
  Sequence sequence;
  std::size_t mind_changes = 0;
  std::size_t rounds_done = 0;
  Verdict verdict;
};

// Round n appends the first string, in length-lex order over B_{first+n}
// and #, after which the learner names B_{first+n}.
inline AdversaryResult adversarial_chain_text(const Learner& m, const Numbering& chain,
                                              const AdversaryBudget& budget = {},
                                              const Window& w = {}) {
  AdversaryResult out;
  std::size_t left = budget.evaluations;
  for (std::size_t r = 0; r < budget.rounds; ++r) {
    if (left == 0) break;
    Index target = budget.first + r;
    SetPtr b = chain.decode(target);
    NatList xs = upto(b->enum_upto(w.stage), w.bound);
    std::optional<Sequence> found;
    detail::length_lex(detail::letters(xs, budget.alphabet_cap, true), 0, budget.seq_len, left,
                       [&](const Sequence& s) {
                         Sequence both = out.sequence;
                         both.insert(both.end(), s.begin(), s.end());
                         Hypothesis h = m(both);
                         if (h && equal_upto(m.space()->decode(*h), b, w).is_holds()) found = s;
                         return found.has_value();
                       });
    if (!found) break;
    out.sequence.insert(out.sequence.end(), found->begin(), found->end());
    ++out.rounds_done;
  }
  if (!out.sequence.empty()) {
    Hypothesis last;
    for (auto& c : m.run(out.sequence)) {
      if (!c.hyp) continue;
      if (last && *last != *c.hyp) ++out.mind_changes;
      last = c.hyp;
    }
  }
  std::string summary = std::to_string(out.rounds_done) + " of " +
                         std::to_string(budget.rounds) + " rounds, " +
                         std::to_string(out.mind_changes) + " mind changes";
  out.verdict = out.rounds_done == budget.rounds ? Verdict::holds(summary)
                                                 : Verdict::inconclusive(summary);
  return out;
}

}  // namespace poseq
