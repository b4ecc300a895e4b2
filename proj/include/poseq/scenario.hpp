#pragma once

// Declarative experiments: JSON scenario files, trace streams and verdict
// tables. Kept out of poseq.hpp so the core headers need no JSON library.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "poseq.hpp"

namespace poseq::scenario {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct Params {
  std::size_t horizon = 500;
  Nat bound = 100;
  Stage quiet = 50;
  Stage stage = 1000;  // stage budget for set readings
  std::uint64_t seed = 0;
  std::size_t vac_cap = 4;
  std::size_t class_cap = 64;

  Window window() const { return Window{stage, bound, quiet}; }
};

struct Overrides {
  std::optional<std::size_t> horizon;
  std::optional<Nat> bound;
  std::optional<Stage> quiet;
  std::optional<Stage> budget;
  std::optional<std::uint64_t> seed;
};

struct NamedLearner {
  std::string name;
  LearnerPtr learner;
};

struct NamedText {
  std::string name;
  TextPtr text;
  SetPtr target;
  bool member = true;  // content lies inside a family member
};

struct Check {
  enum class Kind { Criterion, Constraint, Probe };
  Kind kind = Kind::Criterion;
  std::string learner;
  std::string text;                // empty for probes
  std::vector<std::string> texts;  // probes only
  Criterion criterion = Criterion::Ex;
  Constraint constraint = Constraint::Conservative;
  NumberingPtr family;  // ClassPreserving
  bool weak = false;    // probes only

  std::string label() const {
    switch (kind) {
      case Kind::Criterion: return criterion_name(criterion);
      case Kind::Constraint: return constraint_name(constraint);
      case Kind::Probe: return weak ? "WeakConfidence" : "Confidence";
    }
    return "?";
  }
};

struct Scenario {
  std::string name;
  Params params;
  EqRelPtr rel;
  std::optional<WTable> wtable;
  std::vector<NamedLearner> learners;
  std::vector<NamedText> texts;
  std::vector<Check> checks;

  const NamedLearner& learner(const std::string& n) const {
    for (auto& l : learners)
      if (l.name == n) return l;
    throw input_error("unknown learner '" + n + "'");
  }
  const NamedText& text(const std::string& n) const {
    for (auto& t : texts)
      if (t.name == n) return t;
    throw input_error("unknown text '" + n + "'");
  }
};

// ---------------------------------------------------------------------------
// Schema reading with field paths in every error

class Node {
 public:
  Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& msg) const { throw input_error(path_ + ": " + msg); }

  const std::string& path() const { return path_; }
  const json& raw() const { return *j_; }

  bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

  Node at(const std::string& key) const {
    if (!j_->is_object()) fail("expected an object");
    auto it = j_->find(key);
    if (it == j_->end()) fail("missing field '" + key + "'");
    return Node(*it, path_ + "." + key);
  }

  std::vector<Node> items() const {
    if (!j_->is_array()) fail("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < j_->size(); ++i)
      out.emplace_back((*j_)[i], path_ + "[" + std::to_string(i) + "]");
    return out;
  }

  Nat nat() const {
    if (!j_->is_number_unsigned()) fail("expected a non-negative integer");
    return j_->get<Nat>();
  }

  double real() const {
    if (!j_->is_number()) fail("expected a number");
    return j_->get<double>();
  }

  bool boolean() const {
    if (!j_->is_boolean()) fail("expected true or false");
    return j_->get<bool>();
  }

  std::string str() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  NatList nats() const {
    NatList out;
    for (auto& n : items()) out.push_back(n.nat());
    return out;
  }

  Nat nat_or(const std::string& key, Nat dflt) const { return has(key) ? at(key).nat() : dflt; }
  bool bool_or(const std::string& key, bool dflt) const { return has(key) ? at(key).boolean() : dflt; }

 private:
  const json* j_;
  std::string path_;
};

inline std::string checked_name(const Node& n) {
  std::string s = n.str();
  if (s.empty()) n.fail("name must not be empty");
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
      n.fail("name '" + s + "' may only use letters, digits, '_' and '-'");
  return s;
}

inline Datum parse_datum(const Node& n) {
  if (n.raw().is_string()) {
    if (n.str() != "#") n.fail("a datum is a natural or \"#\"");
    return std::nullopt;
  }
  return n.nat();
}

// Index -> list of [stage, element] events.
inline WTable parse_wtable(const Node& n) {
  if (!n.raw().is_object()) n.fail("a W-table is an object from index to [stage, element] events");
  WTable w;
  for (auto& [key, val] : n.raw().items()) {
    Node ev(val, n.path() + "." + key);
    Index idx = 0;
    try {
      std::size_t used = 0;
      if (key.empty() || key[0] == '-') throw std::invalid_argument("sign");
      idx = std::stoull(key, &used);
      if (used != key.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      n.fail("key '" + key + "' is not a natural index");
    }
    for (auto& e : ev.items()) {
      auto pair = e.items();
      if (pair.size() != 2) e.fail("an event is [stage, element]");
      w.add(idx, pair[0].nat(), pair[1].nat());
    }
  }
  return w;
}

inline WTable load_wtable_file(const std::filesystem::path& p, const std::string& path) {
  std::ifstream in(p);
  if (!in) throw input_error(path + ": cannot read W-table file " + p.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw input_error(path + ": " + p.string() + " is not valid JSON (" + e.what() + ")");
  }
  return parse_wtable(Node(j, p.filename().string()));
}

class Loader {
 public:
  Loader(std::filesystem::path base_dir, Overrides ov) : base_(std::move(base_dir)), ov_(ov) {}

  Scenario load(const json& j) {
    Node root(j, "scenario");
    if (!j.is_object()) root.fail("expected an object");
    Scenario sc;
    sc.name = root.has("name") ? root.at("name").str() : "scenario";
    if (root.has("params")) read_params(root.at("params"), sc.params);
    if (ov_.horizon) sc.params.horizon = *ov_.horizon;
    if (ov_.bound) sc.params.bound = *ov_.bound;
    if (ov_.quiet) sc.params.quiet = *ov_.quiet;
    if (ov_.budget) sc.params.stage = *ov_.budget;
    if (ov_.seed) sc.params.seed = *ov_.seed;
    if (sc.params.horizon == 0) root.fail("params.horizon must be positive");
    params_ = sc.params;

    if (root.has("wtable")) {
      Node wn = root.at("wtable");
      sc.wtable = wn.raw().is_string() ? load_wtable_file(base_ / wn.str(), wn.path()) : parse_wtable(wn);
      w_ = &*sc.wtable;
    }
    sc.rel = rel_ = relation(root.at("relation"));

    for (auto& ln : root.at("learners").items()) {
      std::string name = checked_name(ln.at("name"));
      for (auto& l : sc.learners)
        if (l.name == name) ln.at("name").fail("duplicate learner '" + name + "'");
      sc.learners.push_back({name, learner(ln, sc)});
    }
    for (auto& tn : root.at("texts").items()) {
      std::string name = checked_name(tn.at("name"));
      for (auto& t : sc.texts)
        if (t.name == name) tn.at("name").fail("duplicate text '" + name + "'");
      sc.texts.push_back(text(tn, name));
    }
    for (auto& cn : root.at("checks").items()) sc.checks.push_back(check(cn, sc));
    return sc;
  }

 private:
  void read_params(const Node& p, Params& out) {
    out.horizon = p.nat_or("horizon", out.horizon);
    out.bound = p.nat_or("bound", out.bound);
    out.quiet = p.nat_or("quiet", out.quiet);
    out.stage = p.nat_or("budget", out.stage);
    out.seed = p.nat_or("seed", out.seed);
    out.vac_cap = p.nat_or("vac_cap", out.vac_cap);
    out.class_cap = p.nat_or("class_cap", out.class_cap);
  }

  RecursiveSetSpec recursive_set(const Node& n) {
    if (n.has("members")) return table_set(n.at("members").nats(), n.nat_or("window", 20));
    Nat mod = n.at("modulus").nat();
    if (mod == 0) n.at("modulus").fail("modulus must be positive");
    return residue_set(mod, n.at("residue").nat(), n.nat_or("window", 20));
  }

  EqRelPtr relation(const Node& n) {
    std::string kind = n.at("kind").str();
    if (kind == "identity") return identity_relation();
    if (kind == "recursive_set") return make_relation(FromRecursiveSetSpec{recursive_set(n)});
    if (kind == "explicit_pairs") {
      ExplicitPairsSpec spec;
      for (auto& e : n.at("events").items()) {
        auto t = e.items();
        if (t.size() != 3) e.fail("an event is [stage, x, y]");
        spec.events.emplace_back(t[0].nat(), t[1].nat(), t[2].nat());
      }
      return make_relation(spec);
    }
    if (kind == "symmetric_difference")
      return make_relation(SymmetricDifferenceSpec{finite_set_approx(n.at("r").nats(), "R")});
    if (kind == "zeta") {
      SetPtr z;
      if (n.has("standin")) {
        Node s = n.at("standin");
        std::vector<NatList> tables;
        for (auto& t : s.at("tables").items()) tables.push_back(t.nats());
        z = dense_simple_standin(tables, s.at("window").nat());
      } else {
        z = finite_set_approx(n.at("z").nats(), "Z");
      }
      return build_zeta(z);
    }
    if (kind == "vartheta") {
      if (!w_) n.fail("relation 'vartheta' needs a top-level wtable");
      return build_vartheta(*w_);
    }
    n.at("kind").fail("unknown relation kind '" + kind + "'");
  }

  NumberingPtr family(const Node& n) {
    std::string kind = n.at("kind").str();
    if (kind == "ascending") return ascending_family(rel_);
    if (kind == "eta_finite") return eta_finite_sets(rel_);
    if (kind == "zeta") return zeta_family(rel_);
    if (kind == "merge") return kummer_merge(ascending_family(rel_), rel_);
    if (kind == "weak_monotone")
      return build_family(WeakMonotoneFamily{set(n.at("b0")), n.nat_or("k", 0)}, rel_);
    if (kind == "chain") return build_family(ChainFamily{set(n.at("b"))}, rel_);
    n.at("kind").fail("unknown family kind '" + kind + "'");
  }

  SetPtr set(const Node& n) {
    std::string kind = n.at("kind").str();
    if (kind == "ascending") return ascending_set(rel_, n.at("n").nat());
    if (kind == "finite") return finite_set_approx(n.at("elements").nats());
    if (kind == "closure") return closure_set(rel_, n.at("elements").nats());
    if (kind == "naturals") return naturals();
    if (kind == "residue") {
      Nat mod = n.at("modulus").nat(), res = n.at("residue").nat();
      if (mod == 0) n.at("modulus").fail("modulus must be positive");
      return make_set(
          [mod, res](Stage s) {
            NatList o;
            for (Nat x = res; x <= s; x += mod) o.push_back(x);
            return o;
          },
          "x%" + std::to_string(mod) + "==" + std::to_string(res));
    }
    if (kind == "member") return family(n.at("family"))->decode(n.at("index").nat());
    n.at("kind").fail("unknown set kind '" + kind + "'");
  }

  LearnerPtr learner(const Node& n, const Scenario& sc) {
    std::string kind = n.at("kind").str();
    LearnerParams lp{rel_, w_};
    if (kind == "ascending") return ascending_ex_learner(rel_, n.bool_or("conservative", false));
    if (kind == "eta_finite_bc") return eta_finite_bc_learner(rel_);
    if (kind == "zeta_confident") {
      if (!dynamic_cast<const detail::ZetaRel*>(rel_.get()))
        n.at("kind").fail("'zeta_confident' needs relation kind 'zeta'");
      return zeta_confident_learner(rel_);
    }
    if (kind == "first_datum_finite") return make_family_learner(FirstDatumFinite{recursive_set(n.at("a"))}, lp);
    if (kind == "weak_monotone")
      return make_family_learner(WeakMonotoneLearner{set(n.at("b0")), n.nat_or("k", 0)}, lp);
    if (kind == "chain") {
      ChainLearner c{set(n.at("b")), n.nat_or("escape", 0), n.bool_or("escape_is_rank", true)};
      return make_family_learner(c, lp);
    }
    if (kind == "pairs_above_one") return make_family_learner(PairsAboveOneLearner{}, lp);
    if (kind == "odd_ascending") return make_family_learner(OddAscendingClassesLearner{}, lp);
    if (kind == "bounded_cardinality") return make_family_learner(BoundedCardinalityConfident{}, lp);
    if (kind == "samples") {
      CharacteristicSampleFinite c;
      for (auto& s : n.at("samples").items()) c.samples.push_back(s.nats());
      if (c.samples.empty()) n.at("samples").fail("at least one sample is needed");
      c.merge_first_two = n.bool_or("merge_first_two", false);
      return make_family_learner(c, lp);
    }
    if (kind == "constant") {
      Index i = n.at("index").nat();
      return simple_learner(family(n.at("family")), "constant",
                            [i](std::span<const Datum>) { return Hypothesis{i}; });
    }
    if (kind == "converter") return vac_to_ex_converter(sc.learner(ref(n.at("inner"), sc)).learner, rel_);
    if (kind == "strong_union") {
      auto a = sc.learner(ref(n.at("first"), sc)).learner;
      auto b = sc.learner(ref(n.at("second"), sc)).learner;
      if (a->space()->name() != b->space()->name())
        n.fail("both components must share one hypothesis space");
      auto id = [](Index i) { return i; };
      return strong_union_confident_learner(a, b, id, id, a->space(), n.nat_or("budget", 200));
    }
    n.at("kind").fail("unknown learner kind '" + kind + "'");
  }

  static std::string ref(const Node& n, const Scenario& sc) {
    std::string s = n.str();
    for (auto& l : sc.learners)
      if (l.name == s) return s;
    n.fail("no earlier learner named '" + s + "'");
  }

  NamedText text(const Node& n, const std::string& name) {
    std::string gen = n.at("generator").str();
    NamedText out{name, nullptr, nullptr, n.bool_or("member", true)};
    if (gen == "canonical" || gen == "seeded") {
      out.target = set(n.at("target"));
      if (gen == "canonical") {
        out.text = canonical_text(out.target);
      } else {
        std::uint64_t seed = params_.seed * 1000003ULL + n.nat_or("seed", 0);
        double rate = n.has("pause_rate") ? n.at("pause_rate").real() : 0.2;
        if (!(rate >= 0.0 && rate < 1.0)) n.at("pause_rate").fail("must lie in [0,1)");
        out.text = seeded_text(out.target, seed, rate);
      }
      return out;
    }
    if (gen == "fixed" || gen == "closure") {
      Sequence data;
      for (auto& d : n.at("data").items()) data.push_back(parse_datum(d));
      if (gen == "closure") {
        out.text = complete_by_closure(data, rel_);
        out.target = n.has("target") ? set(n.at("target")) : closure_set(rel_, content(data));
        return out;
      }
      TextTail tail = TextTail::Pause;
      if (n.has("tail")) {
        std::string t = n.at("tail").str();
        if (t == "pause") tail = TextTail::Pause;
        else if (t == "repeat_last") tail = TextTail::RepeatLast;
        else if (t == "cycle") tail = TextTail::Cycle;
        else n.at("tail").fail("tail is one of pause, repeat_last, cycle");
      }
      out.text = fixed_text(data, tail);
      out.target = n.has("target") ? set(n.at("target")) : finite_set_approx(content(data));
      return out;
    }
    n.at("generator").fail("unknown generator '" + gen + "'");
  }

  Check check(const Node& n, const Scenario& sc) {
    Check c;
    c.learner = n.at("learner").str();
    try {
      sc.learner(c.learner);
    } catch (const input_error&) {
      n.at("learner").fail("unknown learner '" + c.learner + "'");
    }
    auto known_text = [&](const Node& t) {
      std::string s = t.str();
      try {
        sc.text(s);
      } catch (const input_error&) {
        t.fail("unknown text '" + s + "'");
      }
      return s;
    };
    if (n.has("probe")) {
      c.kind = Check::Kind::Probe;
      Node p = n.at("probe");
      c.weak = p.bool_or("weak", false);
      for (auto& t : p.at("texts").items()) c.texts.push_back(known_text(t));
      return c;
    }
    c.text = known_text(n.at("text"));
    if (n.has("criterion")) {
      std::string k = n.at("criterion").str();
      c.kind = Check::Kind::Criterion;
      if (k == "Ex") c.criterion = Criterion::Ex;
      else if (k == "BC") c.criterion = Criterion::BC;
      else if (k == "Fin") c.criterion = Criterion::Fin;
      else if (k == "Vac") c.criterion = Criterion::Vac;
      else n.at("criterion").fail("criterion is one of Ex, BC, Fin, Vac");
      return c;
    }
    if (n.has("constraint")) {
      std::string k = n.at("constraint").str();
      c.kind = Check::Kind::Constraint;
      bool found = false;
      for (auto kind : {Constraint::Conservative, Constraint::StrongMon, Constraint::Mon,
                        Constraint::WeakMon, Constraint::ClassPreserving})
        if (k == constraint_name(kind)) c.constraint = kind, found = true;
      if (!found)
        n.at("constraint").fail("constraint is one of Conservative, StrongMon, Mon, WeakMon, ClassPreserving");
      if (c.constraint == Constraint::ClassPreserving) c.family = family(n.at("family"));
      return c;
    }
    n.fail("a check needs 'criterion', 'constraint' or 'probe'");
  }

  std::filesystem::path base_;
  Overrides ov_;
  Params params_;
  EqRelPtr rel_;
  const WTable* w_ = nullptr;
};

inline Scenario load_scenario(const std::filesystem::path& p, const Overrides& ov = {}) {
  std::ifstream in(p);
  if (!in) throw input_error("cannot read scenario file " + p.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw input_error(p.string() + " is not valid JSON (" + e.what() + ")");
  }
  return Loader(p.parent_path(), ov).load(j);
}

inline Scenario parse_scenario(const std::string& text, const Overrides& ov = {},
                               const std::filesystem::path& base = ".") {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("not valid JSON (") + e.what() + ")");
  }
  return Loader(base, ov).load(j);
}

// ---------------------------------------------------------------------------
// Output

inline std::string trace_line(const TraceRecord& r) {
  ordered_json o;
  o["step"] = r.step;
  if (r.datum) o["datum"] = *r.datum;
  else o["datum"] = "#";
  if (r.hyp) o["hypothesis"] = *r.hyp;
  else o["hypothesis"] = "?";
  o["budget_events"] = r.budget_events;
  return o.dump();
}

inline std::string emit_trace(const Trace& tr) {
  std::string out;
  for (auto& r : tr.records) out += trace_line(r) + "\n";
  return out;
}

inline std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 14695981039346656037ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct Row {
  std::string learner, text, check;
  Verdict verdict;
};

struct Report {
  std::vector<Row> rows;
  std::map<std::string, std::string> files;  // name -> contents, sorted by name

  int exit_code() const {
    bool inconclusive = false;
    for (auto& r : rows) {
      if (r.verdict.is_violated()) return 2;
      if (r.verdict.is_inconclusive()) inconclusive = true;
    }
    return inconclusive ? 3 : 0;
  }

  std::string table() const {
    std::string out = "learner\ttext\tcheck\tverdict\tdetail\n";
    for (auto& r : rows)
      out += r.learner + "\t" + r.text + "\t" + r.check + "\t" + outcome_name(r.verdict.outcome) + "\t" +
             r.verdict.detail + "\n";
    return out;
  }

  std::string digest() const {
    std::uint64_t h = fnv1a("");
    for (auto& [name, body] : files) h = fnv1a(body, fnv1a(name + "\n", h));
    return hex64(h);
  }
};

inline std::string trace_file(const std::string& learner, const std::string& text) {
  return learner + "." + text + ".ndjson";
}

inline Verdict evaluate(const Scenario& sc, const Check& c, const Trace& tr) {
  const NamedText& t = sc.text(c.text);
  Window w = sc.params.window();
  if (c.kind == Check::Kind::Criterion)
    return criterion_verdict(tr, c.criterion, t.target, w, sc.params.vac_cap);
  return constraint_check(tr, c.constraint, w, c.family, t.target, sc.params.class_cap);
}

// Runs every learner on every text. Traces are kept only when `traces`.
inline Report run_scenario(const Scenario& sc, bool traces) {
  Report rep;
  std::map<std::pair<std::string, std::string>, Trace> memo;
  auto trace_of = [&](const std::string& l, const std::string& t) -> const Trace& {
    auto key = std::make_pair(l, t);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    return memo.emplace(key, run_trace(*sc.learner(l).learner, *sc.text(t).text, sc.params.horizon))
        .first->second;
  };
  if (traces)
    for (auto& l : sc.learners)
      for (auto& t : sc.texts) rep.files[trace_file(l.name, t.name)] = emit_trace(trace_of(l.name, t.name));
  for (auto& c : sc.checks) {
    if (c.kind == Check::Kind::Probe) {
      std::vector<ProbeText> pts;
      for (auto& name : c.texts) {
        const NamedText& t = sc.text(name);
        pts.push_back({t.text, t.member ? t.target : nullptr});
      }
      auto r = convergence_probe(*sc.learner(c.learner).learner, pts, sc.params.horizon, sc.params.quiet, c.weak);
      Verdict v = r.verdict;
      if (r.budget_events) v.detail += "; " + std::to_string(r.budget_events) + " budget events";
      std::string names;
      for (auto& n : c.texts) names += (names.empty() ? "" : ",") + n;
      rep.rows.push_back({c.learner, names, c.label(), v});
      continue;
    }
    rep.rows.push_back({c.learner, c.text, c.label(), evaluate(sc, c, trace_of(c.learner, c.text))});
  }
  rep.files["verdicts.tsv"] = rep.table();
  return rep;
}

inline void write_report(const Report& rep, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (auto& [name, body] : rep.files) {
    std::ofstream out(dir / name, std::ios::binary);
    out << body;
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  }
}

// ---------------------------------------------------------------------------
// Replay

inline Trace read_trace(std::istream& in, NumberingPtr space, const std::string& where) {
  Trace tr;
  tr.space = std::move(space);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::string path = where + ":" + std::to_string(lineno);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw input_error(path + ": not valid JSON");
    }
    Node n(j, path);
    TraceRecord r;
    r.step = n.at("step").nat();
    if (r.step != tr.records.size()) n.at("step").fail("steps must run 0, 1, 2, ...");
    r.datum = parse_datum(n.at("datum"));
    Node h = n.at("hypothesis");
    if (h.raw().is_string()) {
      if (h.str() != "?") h.fail("a hypothesis is a natural or \"?\"");
    } else {
      r.hyp = h.nat();
    }
    r.budget_events = n.at("budget_events").nat();
    tr.records.push_back(r);
  }
  return tr;
}

// Re-derives every hypothesis from the recorded data, then re-evaluates
// the checks that name this combination on the recorded trace.
inline Report replay(const Scenario& sc, const std::string& learner, const std::string& text,
                     std::istream& in, const std::string& where) {
  const NamedLearner& l = sc.learner(learner);
  sc.text(text);
  Trace rec = read_trace(in, l.learner->space(), where);
  Report rep;
  Sequence data = rec.data();
  auto again = l.learner->run(data);
  Verdict same = Verdict::holds(std::to_string(rec.size()) + " records reproduced");
  for (std::size_t i = 0; i < rec.size(); ++i) {
    if (again[i].hyp != rec.records[i].hyp || again[i].budget_events != rec.records[i].budget_events) {
      same = Verdict::violated("step " + std::to_string(i) + ": recorded " + hypothesis_str(rec.records[i].hyp) +
                               ", learner gives " + hypothesis_str(again[i].hyp));
      break;
    }
  }
  rep.rows.push_back({learner, text, "Replay", same});
  for (auto& c : sc.checks)
    if (c.kind != Check::Kind::Probe && c.learner == learner && c.text == text)
      rep.rows.push_back({learner, text, c.label(), evaluate(sc, c, rec)});
  return rep;
}

}  // namespace poseq::scenario
