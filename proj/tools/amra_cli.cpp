#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "amra/cli/commands.hpp"

namespace {

using amra::cli::RunConfig;

void add_search_flags(CLI::App* sub, RunConfig& c) {
  sub->add_option("--domain", c.domain, "grid2d or uav4d")->capture_default_str();
  sub->add_option("--factors", c.factors, "resolution factors, finest first (e.g. 1,7,21)")->delimiter(',');
  sub->add_option("--connectivity", c.connectivity, "4 or 8 (grid2d)");
  sub->add_option("--heuristics", c.heuristics, "extra heuristic families")->delimiter(',');
  sub->add_option("--w1", c.w1, "initial heuristic inflation")->capture_default_str();
  sub->add_option("--w2", c.w2, "initial anchor factor")->capture_default_str();
  sub->add_option("--decay", c.decay, "weight decay per iteration")->capture_default_str();
  sub->add_option("--timeout-ms", c.timeout_ms, "wall-clock budget per run");
  sub->add_option("--max-expansions", c.max_expansions, "expansion budget per run");
  sub->add_option("--seed", c.seed, "seed for every random choice")->capture_default_str();
  sub->add_option("--out", c.out, "output path or prefix");
}

void add_uav_flags(CLI::App* sub, RunConfig& c) {
  sub->add_option("--primitives", c.primitives, "UAV primitive file (default: generated)");
  sub->add_option("--inflation", c.inflation, "obstacle inflation in metres (default: primitive footprint)");
  sub->add_option("--turn-radius", c.turn_radius, "Dubins turn radius in metres")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anytime multi-resolution multi-heuristic A* planner"};
  app.require_subcommand(1);
  RunConfig c;

  auto* plan = app.add_subcommand("plan", "plan one instance and stream each solution");
  plan->add_option("--map", c.maps, "map file (MovingAI or cost format)")->expected(1);
  plan->add_option("--start", c.start, "x,y (grid2d) or x,y,heading[,v] (uav4d)");
  plan->add_option("--goal", c.goal, "same form as --start");
  plan->add_option("--presets", c.presets, "one preset name (default amra)")->delimiter(',');
  add_search_flags(plan, c);
  add_uav_flags(plan, c);

  auto* bench = app.add_subcommand("bench", "run the map x preset x trial matrix");
  bench->add_option("--map", c.maps, "map files")->delimiter(',');
  bench->add_option("--presets", c.presets, "presets to compare")->delimiter(',');
  bench->add_option("--trials", c.trials, "trials per map")->capture_default_str();
  bench->add_option("--jobs", c.jobs, "worker threads")->capture_default_str();
  bench->add_flag("--no-timing", c.no_timing, "zero wall-clock fields for byte-identical output");
  add_search_flags(bench, c);
  add_uav_flags(bench, c);

  auto* verify = app.add_subcommand("verify", "check the planner's guarantees against an exhaustive oracle");
  verify->add_option("--instances", c.instances, "random instances per property")->capture_default_str();
  verify->add_option("--size", c.size, "instance side length (default 64)");
  add_search_flags(verify, c);

  auto* gen = app.add_subcommand("gen", "write a generated map or the UAV primitive file");
  gen->add_option("target", c.target, "fixture | narrow | cul-de-sac | random | primitives")->required();
  gen->add_option("--seed", c.seed, "generator seed")->capture_default_str();
  gen->add_option("--size", c.size, "side length for random and cul-de-sac");
  gen->add_option("--out", c.out, "output file (default stdout)");

  // Keys live in a section named after the subcommand, e.g. [bench] trials = 20.
  app.set_config("--config", "", "TOML-style config file; command-line flags override it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? amra::cli::kOk : amra::cli::kError;
  }
  c.command = app.get_subcommands().front()->get_name();
  return amra::cli::run(c, std::cout, std::cerr);
}
