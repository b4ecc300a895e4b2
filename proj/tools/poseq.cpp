// Scenario runner: run / check / replay.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "poseq/scenario.hpp"

namespace sc = poseq::scenario;

namespace {

void add_overrides(CLI::App* cmd, sc::Overrides& ov) {
  cmd->add_option("--horizon", ov.horizon, "steps per trace");
  cmd->add_option("--bound", ov.bound, "largest element compared");
  cmd->add_option("--quiet", ov.quiet, "quiet period in stages");
  cmd->add_option("--budget", ov.budget, "stage at which sets are read");
  cmd->add_option("--seed", ov.seed, "scenario seed mixed into every seeded text");
}

int finish(const sc::Report& rep) {
  std::cout << rep.table();
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inductive inference over positive equivalence relations"};
  app.require_subcommand(1);

  sc::Overrides ov;
  std::string scenario_path, out_dir = "out", trace_path, learner, text;

  auto* run = app.add_subcommand("run", "write traces and verdicts for a scenario");
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--out", out_dir, "output directory");
  add_overrides(run, ov);

  auto* check = app.add_subcommand("check", "print verdicts only");
  check->add_option("scenario", scenario_path, "scenario JSON file")->required();
  add_overrides(check, ov);

  auto* rep = app.add_subcommand("replay", "re-verify a recorded trace");
  rep->add_option("trace", trace_path, "NDJSON trace written by run")->required();
  rep->add_option("scenario", scenario_path, "scenario JSON file")->required();
  rep->add_option("--learner", learner, "learner name (default: from the file name)");
  rep->add_option("--text", text, "text name (default: from the file name)");
  add_overrides(rep, ov);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    sc::Scenario s = sc::load_scenario(scenario_path, ov);
    if (run->parsed()) {
      sc::Report r = sc::run_scenario(s, true);
      sc::write_report(r, out_dir);
      std::cout << "digest\t" << r.digest() << "\n";
      return finish(r);
    }
    if (check->parsed()) return finish(sc::run_scenario(s, false));

    if (learner.empty() || text.empty()) {
      // <learner>.<text>.ndjson
      std::string stem = std::filesystem::path(trace_path).filename().string();
      const std::string ext = ".ndjson";
      if (stem.size() > ext.size() && stem.compare(stem.size() - ext.size(), ext.size(), ext) == 0)
        stem.resize(stem.size() - ext.size());
      auto dot = stem.find('.');
      if (dot == std::string::npos)
        throw poseq::input_error("cannot tell learner and text from " + trace_path + "; pass --learner and --text");
      if (learner.empty()) learner = stem.substr(0, dot);
      if (text.empty()) text = stem.substr(dot + 1);
    }
    std::ifstream in(trace_path);
    if (!in) throw poseq::input_error("cannot read trace " + trace_path);
    return finish(sc::replay(s, learner, text, in, trace_path));
  } catch (const poseq::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
