#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "learner.hpp"
#include "numbering.hpp"
#include "text.hpp"
#include "verdict.hpp"

namespace poseq {

struct TraceRecord {
  std::size_t step = 0;
  Datum datum;
  Hypothesis hyp;
  std::size_t budget_events = 0;
};

// Record n carries T(n) and M(T[0..n]).
struct Trace {
  std::vector<TraceRecord> records;
  NumberingPtr space;

  std::size_t size() const { return records.size(); }

  Sequence data() const {
    Sequence out;
    for (auto& r : records) out.push_back(r.datum);
    return out;
  }

  NatList content_upto(std::size_t n) const {
    NatList out;
    for (std::size_t i = 0; i <= n && i < records.size(); ++i)
      if (records[i].datum) out.push_back(*records[i].datum);
    normalize(out);
    return out;
  }

  // Adjacent non-? hypotheses that differ; ? in between is skipped.
  std::size_t mind_changes() const {
    std::size_t c = 0;
    Hypothesis last;
    for (auto& r : records) {
      if (!r.hyp) continue;
      if (last && *last != *r.hyp) ++c;
      last = r.hyp;
    }
    return c;
  }

  std::set<Index> distinct(std::size_t from = 0) const {
    std::set<Index> out;
    for (std::size_t i = from; i < records.size(); ++i)
      if (records[i].hyp) out.insert(*records[i].hyp);
    return out;
  }

  // First step from which the hypothesis never changes (and is not ?).
  std::optional<std::size_t> stabilization() const {
    if (records.empty() || !records.back().hyp) return std::nullopt;
    std::size_t p = records.size() - 1;
    while (p > 0 && records[p - 1].hyp == records.back().hyp) --p;
    return p;
  }

  std::size_t budget_events() const {
    std::size_t c = 0;
    for (auto& r : records) c += r.budget_events;
    return c;
  }
};

inline Trace run_trace(const Learner& m, const Text& t, std::size_t horizon) {
  Trace tr;
  tr.space = m.space();
  Sequence seq = t.prefix(horizon + 1);
  auto conj = m.run(seq);
  for (std::size_t n = 0; n < seq.size(); ++n)
    tr.records.push_back({n, seq[n], conj[n].hyp, conj[n].budget_events});
  return tr;
}

// A trace from explicit data and hypotheses, for fixtures and replay.
inline Trace make_trace(NumberingPtr space, const Sequence& data, const std::vector<Hypothesis>& hyps) {
  Trace tr;
  tr.space = std::move(space);
  for (std::size_t n = 0; n < hyps.size(); ++n)
    tr.records.push_back({n, n < data.size() ? data[n] : Datum{}, hyps[n], 0});
  return tr;
}

enum class Criterion { Ex, BC, Fin, Vac };

inline const char* criterion_name(Criterion c) {
  switch (c) {
    case Criterion::Ex: return "Ex";
    case Criterion::BC: return "BC";
    case Criterion::Fin: return "Fin";
    case Criterion::Vac: return "Vac";
  }
  return "?";
}

namespace detail {

class Judge {
 public:
  Judge(NumberingPtr space, SetPtr target, Window w)
      : space_(std::move(space)), target_(std::move(target)), w_(w) {}

  const Verdict& correct(Index h) {
    auto it = memo_.find(h);
    if (it != memo_.end()) return it->second;
    return memo_.emplace(h, equal_upto(space_->decode(h), target_, w_)).first->second;
  }

 private:
  NumberingPtr space_;
  SetPtr target_;
  Window w_;
  std::map<Index, Verdict> memo_;
};

inline std::string at_step(std::size_t n) { return "step " + std::to_string(n); }

}  // namespace detail

// `vac_cap` bounds the number of distinct tail hypotheses for Vac.
inline Verdict criterion_verdict(const Trace& tr, Criterion kind, SetPtr target, const Window& w,
                                 std::size_t vac_cap = 4) {
  if (tr.records.empty()) return Verdict::inconclusive("empty trace");
  detail::Judge judge(tr.space, std::move(target), w);
  const std::size_t last = tr.size() - 1;
  const std::size_t q = std::max<std::size_t>(w.quiet, 1);

  auto bc = [&]() -> Verdict {
    if (tr.size() < q) return Verdict::inconclusive("trace shorter than the quiet period");
    std::size_t from = tr.size() - q;
    bool unknown = false;
    for (std::size_t i = from; i <= last; ++i) {
      const auto& h = tr.records[i].hyp;
      if (!h) return Verdict::inconclusive("? inside the final quiet period at " + detail::at_step(i));
      const Verdict& v = judge.correct(*h);
      if (v.is_violated())
        return Verdict::violated("hypothesis " + std::to_string(*h) + " at " + detail::at_step(i) +
                                 ": " + v.detail);
      if (v.is_inconclusive()) unknown = true;
    }
    if (unknown) return Verdict::inconclusive("some tail hypothesis unresolved");
    return Verdict::holds("all hypotheses from " + detail::at_step(from) + " correct");
  };

  switch (kind) {
    case Criterion::Ex: {
      auto p = tr.stabilization();
      if (!p) return Verdict::inconclusive("final hypothesis is ?");
      if (last + 1 - *p < q)
        return Verdict::inconclusive("last change at " + detail::at_step(*p) +
                                     " inside the quiet period");
      Index h = *tr.records.back().hyp;
      const Verdict& v = judge.correct(h);
      std::string where = "stable on " + std::to_string(h) + " from " + detail::at_step(*p);
      if (v.is_holds()) return Verdict::holds(where);
      if (v.is_violated()) return Verdict::violated(where + " but " + v.detail);
      return Verdict::inconclusive(where + ", correctness unresolved");
    }
    case Criterion::BC:
      return bc();
    case Criterion::Fin: {
      std::optional<std::size_t> commit;
      for (std::size_t i = 0; i <= last; ++i) {
        const auto& h = tr.records[i].hyp;
        if (!commit) {
          if (h) commit = i;
          continue;
        }
        if (h != tr.records[*commit].hyp)
          return Verdict::violated("committed at " + detail::at_step(*commit) + ", changed at " +
                                   detail::at_step(i));
      }
      if (!commit) return Verdict::inconclusive("no commitment");
      Index h = *tr.records[*commit].hyp;
      const Verdict& v = judge.correct(h);
      std::string where = "committed to " + std::to_string(h) + " at " + detail::at_step(*commit);
      if (v.is_holds()) return Verdict::holds(where);
      if (v.is_violated()) return Verdict::violated(where + " but " + v.detail);
      return Verdict::inconclusive(where + ", correctness unresolved");
    }
    case Criterion::Vac: {
      Verdict v = bc();
      if (!v.is_holds()) return v;
      std::size_t d = tr.distinct(tr.size() - q).size();
      if (d <= vac_cap)
        return Verdict::holds(std::to_string(d) + " distinct tail hypotheses, cap " +
                              std::to_string(vac_cap));
      return Verdict::inconclusive(std::to_string(d) + " distinct tail hypotheses exceed cap " +
                                   std::to_string(vac_cap));
    }
  }
  return Verdict::inconclusive("unknown criterion");
}

// ---------------------------------------------------------------------------
// Convergence on a corpus

struct ProbeText {
  TextPtr text;
  SetPtr member;  // family member holding the text's content, if known
};

struct ProbeReport {
  Verdict verdict;
  std::vector<std::size_t> mind_changes;
  std::size_t budget_events = 0;
  std::size_t used = 0;
};

// Confidence evidence for this corpus only. In weak mode, texts without a
// member tag are skipped.
inline ProbeReport convergence_probe(const Learner& m, const std::vector<ProbeText>& texts,
                                     std::size_t horizon, Stage quiet = 50, bool weak = false) {
  ProbeReport r;
  std::size_t unstable = 0;
  for (auto& pt : texts) {
    if (weak && !pt.member) continue;
    ++r.used;
    Trace tr = run_trace(m, *pt.text, horizon);
    r.mind_changes.push_back(tr.mind_changes());
    r.budget_events += tr.budget_events();
    auto p = tr.stabilization();
    if (!p || tr.size() - *p < quiet) ++unstable;
  }
  std::string scope = " (corpus of " + std::to_string(r.used) + " texts)";
  std::size_t most = 0;
  for (auto c : r.mind_changes) most = std::max(most, c);
  if (unstable)
    r.verdict = Verdict::inconclusive(std::to_string(unstable) + " texts still changing; up to " +
                                      std::to_string(most) + " mind changes" + scope);
  else
    r.verdict = Verdict::holds("stable on every text" + scope);
  return r;
}

// ---------------------------------------------------------------------------
// Constraints

enum class Constraint { Conservative, StrongMon, Mon, WeakMon, ClassPreserving };

inline const char* constraint_name(Constraint c) {
  switch (c) {
    case Constraint::Conservative: return "Conservative";
    case Constraint::StrongMon: return "StrongMon";
    case Constraint::Mon: return "Mon";
    case Constraint::WeakMon: return "WeakMon";
    case Constraint::ClassPreserving: return "ClassPreserving";
  }
  return "?";
}

namespace detail {

enum class Tri { Yes, No, Unknown };

class SetOracle {
 public:
  SetOracle(NumberingPtr space, Window w) : space_(std::move(space)), w_(w) {}

  Tri member(Index h, Nat x) {
    SetPtr s = space_->decode(h);
    if (s->has(x, w_.stage)) return Tri::Yes;
    if (stable_upto(*s, w_.stage, std::max(w_.bound, x), w_.quiet)) return Tri::No;
    return Tri::Unknown;
  }

  // xs subset of W_h: Yes, No (with witness) or Unknown.
  Tri subset(const NatList& xs, Index h, Nat* witness = nullptr) {
    Tri out = Tri::Yes;
    for (Nat x : xs) {
      Tri t = member(h, x);
      if (t == Tri::No) {
        if (witness) *witness = x;
        return Tri::No;
      }
      if (t == Tri::Unknown) out = Tri::Unknown;
    }
    return out;
  }

  // W_a (restricted to `within` when given) subset of W_b, on the window.
  Tri set_subset(Index a, Index b, const NatList* within, Nat* witness) {
    SetPtr sa = space_->decode(a);
    NatList xs;
    for (Nat x : upto(sa->enum_upto(w_.stage), w_.bound))
      if (!within || contains(*within, x)) xs.push_back(x);
    Tri t = subset(xs, b, witness);
    if (t == Tri::Yes && !stable_upto(*sa, w_.stage, w_.bound, w_.quiet)) return Tri::Unknown;
    return t;
  }

 private:
  NumberingPtr space_;
  Window w_;
};

struct Run {
  Index hyp;
  std::size_t start;
};

inline std::vector<Run> runs_of(const Trace& tr) {
  std::vector<Run> out;
  for (auto& r : tr.records) {
    if (!r.hyp) continue;
    if (out.empty() || out.back().hyp != *r.hyp) out.push_back({*r.hyp, r.step});
  }
  return out;
}

}  // namespace detail

// `target` is the text's limit content (needed by Mon; defaults to the
// trace content); `family` is needed by ClassPreserving.
inline Verdict constraint_check(const Trace& tr, Constraint kind, const Window& w,
                                NumberingPtr family = nullptr, SetPtr target = nullptr,
                                std::size_t class_cap = 64) {
  using detail::Tri;
  detail::SetOracle oracle(tr.space, w);
  auto runs = detail::runs_of(tr);
  std::size_t unknown = 0;
  auto pos = [](std::size_t n) { return detail::at_step(n); };
  auto hs = [](Index h) { return std::to_string(h); };

  switch (kind) {
    case Constraint::Conservative:
      for (std::size_t r = 0; r + 1 < runs.size(); ++r) {
        std::size_t j = runs[r + 1].start;
        NatList c = tr.content_upto(j);
        Tri t = oracle.subset(c, runs[r].hyp);
        if (t == Tri::Yes)
          return Verdict::violated("change " + hs(runs[r].hyp) + "->" + hs(runs[r + 1].hyp) +
                                   " at " + pos(j) + " while content " + join(c) +
                                   " is inside the prior hypothesis");
        if (t == Tri::Unknown) ++unknown;
      }
      break;
    case Constraint::StrongMon:
    case Constraint::Mon: {
      NatList l;
      if (kind == Constraint::Mon)
        l = target ? upto(target->enum_upto(w.stage), w.bound) : tr.content_upto(tr.size());
      for (std::size_t r = 0; r + 1 < runs.size(); ++r) {
        Nat x = 0;
        Tri t = oracle.set_subset(runs[r].hyp, runs[r + 1].hyp,
                                  kind == Constraint::Mon ? &l : nullptr, &x);
        if (t == Tri::No)
          return Verdict::violated("x=" + std::to_string(x) + " in " + hs(runs[r].hyp) +
                                   " (from " + pos(runs[r].start) + ") but not in " +
                                   hs(runs[r + 1].hyp) + " (from " + pos(runs[r + 1].start) + ")");
        if (t == Tri::Unknown) ++unknown;
      }
      break;
    }
    case Constraint::WeakMon:
      for (std::size_t r = 0; r < runs.size(); ++r) {
        for (std::size_t q = r + 1; q < runs.size(); ++q) {
          NatList c = tr.content_upto(runs[q].start);
          Tri premise = oracle.subset(c, runs[r].hyp);
          if (premise == Tri::No) continue;
          Nat x = 0;
          Tri t = oracle.set_subset(runs[r].hyp, runs[q].hyp, nullptr, &x);
          if (premise == Tri::Yes && t == Tri::No)
            return Verdict::violated("content " + join(c) + " at " + pos(runs[q].start) +
                                     " inside " + hs(runs[r].hyp) + " yet x=" + std::to_string(x) +
                                     " is lost");
          if (t != Tri::Yes) ++unknown;
        }
      }
      break;
    case Constraint::ClassPreserving: {
      if (!family) return Verdict::inconclusive("no family supplied");
      for (Index h : tr.distinct()) {
        bool found = false;
        for (Index i = 0; i <= class_cap && !found; ++i)
          found = equal_upto(tr.space->decode(h), family->decode(i), w).is_holds();
        if (!found) ++unknown;
      }
      if (unknown)
        return Verdict::inconclusive(std::to_string(unknown) +
                                     " hypotheses matched no family index within the cap");
      return Verdict::holds("every hypothesis matches a family member");
    }
  }
  if (unknown) return Verdict::inconclusive(std::to_string(unknown) + " unresolved queries");
  return Verdict::holds(std::to_string(runs.size()) + " runs checked");
}

// ---------------------------------------------------------------------------
// Searches

namespace detail {

// Length-lex enumeration; visit returns true to stop. Returns false when
// the evaluation budget ran out first.
inline bool length_lex(const std::vector<Datum>& alpha, std::size_t min_len, std::size_t max_len,
                       std::size_t& budget,
                       const std::function<bool(const Sequence&)>& visit) {
  Sequence cur;
  for (std::size_t len = min_len; len <= max_len; ++len) {
    if (alpha.empty() && len > 0) break;
    std::vector<std::size_t> digits(len, 0);
    for (;;) {
      if (budget == 0) return false;
      --budget;
      cur.clear();
      for (auto d : digits) cur.push_back(alpha[d]);
      if (visit(cur)) return true;
      std::size_t i = len;
      while (i > 0 && ++digits[i - 1] == alpha.size()) digits[--i] = 0;
      if (i == 0) break;
    }
  }
  return true;
}

inline std::vector<Datum> letters(const NatList& xs, std::size_t cap, bool with_pause) {
  std::vector<Datum> out;
  if (with_pause) out.push_back(std::nullopt);
  for (std::size_t i = 0; i < xs.size() && i < cap; ++i) out.push_back(xs[i]);
  return out;
}

}  // namespace detail

struct StabilisingResult {
  std::optional<Sequence> sequence;
  Verdict verdict;
};

// First sigma over s (length <= len_bound) that no probe over s plus #
// (length <= probe_bound) moves. Certified relative to the bounds only.
inline StabilisingResult stabilising_sequence_search(const Learner& m, const SetApprox& s,
                                                     std::size_t len_bound, std::size_t probe_bound,
                                                     Stage stage = 200, std::size_t alphabet_cap = 4,
                                                     std::size_t budget = 200000) {
  NatList xs = s.enum_upto(stage);
  auto alpha = detail::letters(xs, alphabet_cap, false);
  auto probes = detail::letters(xs, alphabet_cap, true);
  std::optional<Sequence> found;
  std::size_t outer = budget;
  detail::length_lex(alpha, 0, len_bound, outer, [&](const Sequence& sigma) {
    Hypothesis h = m(sigma);
    bool ok = true;
    std::size_t inner = budget;
    bool done = detail::length_lex(probes, 1, probe_bound, inner, [&](const Sequence& tau) {
      Sequence both = sigma;
      both.insert(both.end(), tau.begin(), tau.end());
      ok = m(both) == h;
      return !ok;
    });
    if (!done) ok = false;
    if (ok) found = sigma;
    return ok;
  });
  if (found)
    return {found, Verdict::holds("sigma=" + sequence_str(*found) + " stable for probes up to length " +
                                  std::to_string(probe_bound))};
  return {std::nullopt, Verdict::inconclusive("no stabilising sequence within the bounds")};
}

struct MonotonicityWitness {
  Sequence sigma, tau;
  Nat n = 0;
  Nat x = 0;
  Verdict verdict;
};

struct WitnessBudget {
  std::size_t seq_len = 3;
  std::size_t evaluations = 5000;
  std::size_t alphabet_cap = 4;
};

// For a family of B_0 plus the chain B_{n+1} = A_{n+k+1}: find sigma over
// B_0 on which bc names B_0, an n with a_{n+k+1} in B_0 and cnt(sigma) in
// B_{n+1}, and tau over B_{n+1} on which bc names B_{n+1}. Then x =
// a_{n+k+1} is dropped on any text for a larger chain member.
inline MonotonicityWitness bc_nonmonotone_witness(const Learner& bc, const Numbering& family,
                                                  const EqRel& rel, Nat k, const Window& w,
                                                  const WitnessBudget& budget = {}) {
  MonotonicityWitness out;
  std::size_t left = budget.evaluations;
  auto names = [&](const Sequence& seq, Index member) {
    Hypothesis h = bc(seq);
    return h && equal_upto(bc.space()->decode(*h), family.decode(member), w).is_holds();
  };
  SetPtr b0 = family.decode(0);
  NatList b0x = upto(b0->enum_upto(w.stage), w.bound);
  std::optional<Sequence> sigma;
  detail::length_lex(detail::letters(b0x, budget.alphabet_cap, false), 1, budget.seq_len, left,
                     [&](const Sequence& s) {
                       if (names(s, 0)) sigma = s;
                       return sigma.has_value();
                     });
  if (!sigma) {
    out.verdict = Verdict::inconclusive("no sequence over B_0 on which the learner names B_0");
    return out;
  }
  NatList cs = content(*sigma);
  std::optional<Nat> pick;
  for (Nat n = 0; n <= w.bound && !pick; ++n) {
    Nat x = rel.rep(n + k + 1, w.stage);
    if (x > w.bound) break;
    if (contains(b0x, x) && is_subset(cs, family.decode(n + 1)->enum_upto(w.stage))) pick = n;
  }
  if (!pick) {
    out.verdict = Verdict::inconclusive("no chain member fits sigma " + sequence_str(*sigma));
    return out;
  }
  Nat n = *pick;
  NatList bn = upto(family.decode(n + 1)->enum_upto(w.stage), w.bound);
  std::optional<Sequence> tau;
  detail::length_lex(detail::letters(bn, budget.alphabet_cap, false), 0, budget.seq_len, left,
                     [&](const Sequence& t) {
                       Sequence both = *sigma;
                       both.insert(both.end(), t.begin(), t.end());
                       if (names(both, n + 1)) tau = t;
                       return tau.has_value();
                     });
  if (!tau) {
    out.verdict = Verdict::inconclusive("no extension naming B_" + std::to_string(n + 1));
    return out;
  }
  out.sigma = *sigma;
  out.tau = *tau;
  out.n = n;
  out.x = rel.rep(n + k + 1, w.stage);
  out.verdict = Verdict::holds("sigma=" + sequence_str(out.sigma) + " tau=" + sequence_str(out.tau) +
                               " x=" + std::to_string(out.x));
  return out;
}

}  // namespace poseq
