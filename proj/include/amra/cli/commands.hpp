#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "amra/bench/matrix.hpp"
#include "amra/bench/results_io.hpp"
#include "amra/bench/verify.hpp"
#include "amra/core/solution_io.hpp"
#include "amra/grid2d/generators.hpp"
#include "amra/grid2d/map_io.hpp"
#include "amra/uav4d/generator.hpp"
#include "amra/uav4d/heuristics.hpp"

namespace amra::cli {

/// Exit codes. kNoPath and kTimeout are only produced by `plan`.
enum Exit : int { kOk = 0, kError = 1, kNoPath = 2, kTimeout = 3, kPropertyFailed = 4 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;  // plan | bench | verify | gen
  std::string target;   // gen: fixture | narrow | cul-de-sac | random | primitives
  std::vector<std::string> maps;
  std::string domain = "grid2d";
  std::vector<int> factors;  // empty: {1,7,21} for plan/bench grids, {1,3,9} for verify
  std::optional<int> connectivity;  // default: 4 for plan/bench, 8 for verify
  std::vector<std::string> heuristics;  // empty: none on grids, dubins+dijkstra on uav4d
  std::vector<std::string> presets;     // empty: amra for plan, the full matrix for bench
  double w1 = 3.0;
  double w2 = 2.0;
  double decay = 0.5;
  std::optional<std::int64_t> timeout_ms;
  std::optional<std::uint64_t> max_expansions;
  std::uint64_t seed = 1;
  std::string out;
  int jobs = 1;
  std::size_t trials = 10;
  std::string start;
  std::string goal;
  std::string primitives;  // empty: generate in memory
  double inflation = -1;
  double turn_radius = uav4d::kDefaultTurnRadius;
  bool no_timing = false;
  int size = 0;  // gen random / cul-de-sac side, verify instance side
  int instances = 20;
};

namespace detail {

inline std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

inline std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline std::vector<int> parse_ints(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw ConfigError(std::string("bad ") + what + " '" + text + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

inline std::vector<int> effective_factors(const RunConfig& c) {
  if (!c.factors.empty()) return c.factors;
  if (c.command == "verify") return {1, 3, 9};
  return c.domain == "uav4d" ? std::vector<int>{1, 3} : std::vector<int>{1, 7, 21};
}

inline int effective_connectivity(const RunConfig& c) {
  return c.connectivity.value_or(c.command == "verify" ? 8 : 4);
}

inline std::vector<std::string> effective_heuristics(const RunConfig& c) {
  if (!c.heuristics.empty() || c.domain != "uav4d") return c.heuristics;
  return {"dubins", "dijkstra"};
}

inline std::vector<std::string> effective_presets(const RunConfig& c) {
  if (!c.presets.empty()) return c.presets;
  if (c.command == "plan") return {"amra"};
  if (c.domain == "uav4d") return {"amra", "ara-high", "ara-low", "mra"};
  return {"amra", "ara-high", "ara-mid", "ara-low", "mra"};
}

/// One-line `key=value` echo of the effective configuration.
inline std::string describe(const RunConfig& c) {
  std::ostringstream os;
  os << "command=" << c.command;
  if (!c.target.empty()) os << " target=" << c.target;
  if (!c.maps.empty()) os << " map=" << detail::join(c.maps);
  os << " domain=" << c.domain << " factors=" << detail::join(effective_factors(c));
  if (c.domain == "grid2d") os << " connectivity=" << effective_connectivity(c);
  os << " heuristics=" << detail::join(effective_heuristics(c)) << " presets=" << detail::join(effective_presets(c))
     << " w1=" << format_number(c.w1) << " w2=" << format_number(c.w2) << " decay=" << format_number(c.decay)
     << " timeout-ms=" << (c.timeout_ms ? std::to_string(*c.timeout_ms) : "none")
     << " max-expansions=" << (c.max_expansions ? std::to_string(*c.max_expansions) : "none") << " seed=" << c.seed;
  if (c.command == "bench") os << " trials=" << c.trials << (c.no_timing ? " no-timing" : "");
  if (!c.start.empty()) os << " start=" << c.start;
  if (!c.goal.empty()) os << " goal=" << c.goal;
  if (c.domain == "uav4d")
    os << " primitives=" << (c.primitives.empty() ? "generated" : c.primitives) << " turn-radius=" << format_number(c.turn_radius);
  return os.str();
}

/// Rejects inconsistent settings before any file is read.
inline void validate(const RunConfig& c) {
  if (c.domain != "grid2d" && c.domain != "uav4d") throw ConfigError("--domain must be grid2d or uav4d");
  if (!(c.w1 >= 1) || !(c.w2 >= 1)) throw ConfigError("--w1 and --w2 must be >= 1");
  if (!(c.decay > 0 && c.decay < 1)) throw ConfigError("--decay must lie in (0, 1)");
  if (c.timeout_ms && *c.timeout_ms <= 0) throw ConfigError("--timeout-ms must be positive");
  if (c.jobs < 1) throw ConfigError("--jobs must be >= 1");
  const auto f = effective_factors(c);
  if (c.domain == "uav4d") {
    if (f != std::vector<int>{1, 3}) throw ConfigError("uav4d has fixed resolutions 1,3 (3 m and 9 m)");
    for (const auto& h : effective_heuristics(c))
      if (h != "dubins" && h != "dijkstra" && h != "euclidean") throw ConfigError("unknown uav4d heuristic '" + h + "'");
  } else {
    if (effective_connectivity(c) != 4 && effective_connectivity(c) != 8) throw ConfigError("--connectivity must be 4 or 8");
    if (f.empty() || f.front() != 1) throw ConfigError("--factors must start at 1");
    for (std::size_t i = 1; i < f.size(); ++i)
      if (f[i] <= f[i - 1]) throw ConfigError("--factors must be strictly ascending");
    for (const auto& h : c.heuristics) {
      if (h == "dubins" || h == "dijkstra")
        throw ConfigError("heuristic '" + h + "' needs headings; use it with --domain uav4d");
      if (h != "manhattan" && h != "euclidean" && h != "chebyshev") throw ConfigError("unknown grid2d heuristic '" + h + "'");
    }
  }
  if ((c.command == "plan" || c.command == "bench") && c.maps.empty()) throw ConfigError("--map is required");
  if (c.command == "plan") {
    if (c.maps.size() != 1) throw ConfigError("plan takes exactly one --map");
    if (c.presets.size() > 1) throw ConfigError("plan takes one preset");
    if (c.start.empty() != c.goal.empty()) throw ConfigError("give both --start and --goal, or neither");
  }
  if (c.command == "gen" && c.target.empty()) throw ConfigError("gen needs a target");
}

inline PlannerConfig planner_config(const RunConfig& c) {
  PlannerConfig p;
  p.w1_init = c.w1;
  p.w2_init = c.w2;
  p.weight_schedule.decay = c.decay;
  if (c.timeout_ms) p.time_budget = std::chrono::milliseconds(*c.timeout_ms);
  p.expansion_budget = c.max_expansions;
  return p;
}

inline grid2d::GridState parse_grid_state(const std::string& text) {
  const auto v = detail::parse_ints(text, "grid state");
  if (v.size() != 2) throw ConfigError("grid state '" + text + "' must be x,y");
  return {v[0], v[1]};
}

inline uav4d::UavState parse_uav_state(const std::string& text) {
  const auto v = detail::parse_ints(text, "uav state");
  if (v.size() != 3 && v.size() != 4) throw ConfigError("uav state '" + text + "' must be x,y,heading[,velocity]");
  return {v[0], v[1], v[2], v.size() == 4 ? v[3] : 0};
}

inline std::string map_id(const std::string& path) { return std::filesystem::path(path).stem().string(); }

inline std::shared_ptr<const uav4d::PrimitiveSet> primitive_set(const RunConfig& c) {
  if (c.primitives.empty()) return std::make_shared<const uav4d::PrimitiveSet>(uav4d::generate_primitives());
  return std::make_shared<const uav4d::PrimitiveSet>(uav4d::load_primitives(c.primitives));
}

// --- plan ------------------------------------------------------------------------

namespace detail {

template <SearchDomain D, typename Repr>
int plan_on(const D& domain, const std::vector<HeuristicSpec<typename D::State>>& fams,
            const std::vector<std::string>& family_names, const typename D::State& start,
            const GoalTest<typename D::State>& goal, const std::string& goal_text, bool goal_valid, const RunConfig& c,
            Repr repr, std::ostream& out,
            std::ostream& err) {
  if (!domain.valid(start)) {
    err << "error: start " << repr(start) << " is blocked or outside the map\n";
    return kError;
  }
  if (!goal_valid) {
    err << "error: goal is blocked or outside the map\n";
    return kError;
  }
  const auto named = bench::parse_named_preset(effective_presets(c).front(), domain.num_resolutions(), family_names);
  ResolutionSubset<D> sub(domain, named.preset.resolutions);
  AmraPlanner<ResolutionSubset<D>> planner(sub, build_heuristics(named.preset, fams), named.preset.apply(planner_config(c)));
  out << "# " << describe(c) << '\n';
  out << "# start=" << repr(start) << " goal=" << goal_text << '\n';
  const auto res = planner.plan(start, goal, [&](const auto& s) {
    out << "solution iter=" << s.iteration << " cost=" << format_number(s.cost) << " bound=" << format_number(s.bound)
        << " time_ms=" << format_number(s.stats.time_to_publish_ms) << " expansions=" << s.stats.expansions_total << '\n';
    out.flush();
  });
  if (res.solved()) {
    if (!c.out.empty()) {
      std::ofstream f(c.out);
      if (!f) {
        err << "error: cannot write '" << c.out << "'\n";
        return kError;
      }
      f << "# " << describe(c) << '\n';
      write_solution(f, res.best(), repr);
    }
    if (res.status == PlanStatus::kBudgetExhausted) out << "budget exhausted; best bound " << format_number(res.best().bound) << '\n';
    return kOk;
  }
  if (res.status == PlanStatus::kNoPath) {
    out << "no path exists\n";
    return kNoPath;
  }
  out << "timeout without a solution\n";
  return kTimeout;
}

}  // namespace detail

/// Plans one instance and streams every published solution to `out`. Without
/// --start/--goal a pair is sampled from the coarsest lattice under --seed.
inline int cmd_plan(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    const auto map = grid2d::load_map(c.maps.front());
    if (c.domain == "grid2d") {
      const grid2d::Grid2D d(map, effective_connectivity(c), effective_factors(c));
      grid2d::GridState s;
      grid2d::GridState g;
      if (c.start.empty()) {
        const auto p = bench::sample_problems(d, 1, c.seed).front();
        s = p.start;
        g = p.goal;
      } else {
        s = parse_grid_state(c.start);
        g = parse_grid_state(c.goal);
      }
      std::vector<std::string> names{grid2d::anchor_heuristic(d, g).name};
      for (const auto& h : c.heuristics) names.push_back(h);
      return detail::plan_on(d, grid2d::heuristic_families(d, g, c.heuristics), names, s,
                             GoalTest<grid2d::GridState>([g](const grid2d::GridState& x) { return x == g; }), to_string(g), d.valid(g),
                             c, [](const grid2d::GridState& x) { return to_string(x); }, out, err);
    }
    const auto prims = primitive_set(c);
    const uav4d::Uav4D d(map, *prims, c.inflation);
    uav4d::UavState s;
    uav4d::UavState g;
    if (c.start.empty()) {
      const auto p = bench::sample_problems(d, 1, c.seed).front();
      s = p.start;
      g = p.goal;
    } else {
      s = parse_uav_state(c.start);
      g = parse_uav_state(c.goal);
    }
    const auto extra = effective_heuristics(c);
    std::vector<std::string> names{"euclidean"};
    names.insert(names.end(), extra.begin(), extra.end());
    return detail::plan_on(d, uav4d::heuristic_families(d, g, extra, c.turn_radius), names, s, uav4d::goal_pose(g),
                           to_string(g) + " (any velocity)", d.valid(g), c, [](const uav4d::UavState& x) { return to_string(x); }, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
}

// --- bench -----------------------------------------------------------------------

/// Runs the (map x preset x trial) matrix. Writes <out>.csv, <out>.curves.jsonl
/// and <out>.summary.csv, and prints the summary table.
inline int cmd_bench(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    std::vector<bench::TrialTask> tasks;
    if (c.domain == "grid2d") {
      std::vector<bench::GridMapEntry> maps;
      for (const auto& p : c.maps) maps.push_back({map_id(p), std::make_shared<const grid2d::CostGrid>(grid2d::load_map(p))});
      bench::GridMatrixOptions opt;
      opt.factors = effective_factors(c);
      opt.connectivity = effective_connectivity(c);
      opt.extra_heuristics = c.heuristics;
      opt.presets = effective_presets(c);
      opt.trials = c.trials;
      opt.seed = c.seed;
      opt.planner = planner_config(c);
      tasks = bench::grid_matrix_tasks(maps, opt);
    } else {
      std::vector<bench::UavMapEntry> maps;
      for (const auto& p : c.maps) maps.push_back({map_id(p), std::make_shared<const grid2d::CostGrid>(grid2d::load_map(p))});
      bench::UavMatrixOptions opt;
      opt.primitives = primitive_set(c);
      opt.inflation = c.inflation;
      opt.heuristics = effective_heuristics(c);
      opt.turn_radius = c.turn_radius;
      opt.presets = effective_presets(c);
      opt.trials = c.trials;
      opt.seed = c.seed;
      opt.planner = planner_config(c);
      tasks = bench::uav_matrix_tasks(maps, opt);
    }
    auto rows = bench::run_tasks(tasks, c.jobs);
    int failed = 0;
    for (auto& r : rows) {
      if (c.no_timing) bench::strip_timing(r);
      if (!r.error.empty()) {
        if (failed++ == 0) err << "error: " << r.map << ' ' << r.preset << " trial " << r.trial << ": " << r.error << '\n';
      }
    }
    const std::string prefix = c.out.empty() ? "results" : c.out;
    const std::vector<std::string> header{describe(c)};
    std::ofstream csv(prefix + ".csv");
    std::ofstream curves(prefix + ".curves.jsonl");
    std::ofstream summary(prefix + ".summary.csv");
    if (!csv || !curves || !summary) {
      err << "error: cannot write results under '" << prefix << "'\n";
      return kError;
    }
    bench::write_results_csv(csv, rows, header);
    bench::write_curves_jsonl(curves, rows);
    const auto groups = bench::summarize(rows);
    summary << "# " << header.front() << '\n';
    bench::write_summary_csv(summary, groups);
    bench::print_summary(out, groups);
    out << rows.size() << " trials written to " << prefix << ".csv\n";
    if (failed) {
      err << failed << " trial(s) raised errors\n";
      return kError;
    }
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
}

// --- verify ----------------------------------------------------------------------

/// Runs the property suites on seeded grid instances. A failing property has
/// its counterexample written to <out>-<property>.map (default prefix
/// "counterexample").
inline int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    bench::VerifyOptions opt;
    opt.seed = c.seed;
    opt.instances = c.instances;
    if (c.size > 0) opt.grid.size = c.size;
    if (!c.factors.empty()) opt.grid.factors = c.factors;
    opt.grid.connectivity = effective_connectivity(c);
    opt.planner = planner_config(c);
    bool ok = true;
    for (const auto& r : bench::verify_all(opt)) {
      out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.checked << " instances)";
      if (!r.passed) {
        ok = false;
        out << ": " << r.detail;
        if (r.counterexample) {
          const std::string path = (c.out.empty() ? "counterexample" : c.out) + "-" + r.name + ".map";
          std::ofstream f(path);
          f << r.counterexample->serialize();
          out << " [" << path << "]";
        }
      }
      out << '\n';
    }
    return ok ? kOk : kPropertyFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
}

// --- gen -------------------------------------------------------------------------

/// Writes a generated map or the UAV primitive file to --out (stdout when
/// empty). Output depends only on the target and the flags.
inline int cmd_gen(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    std::ostringstream body;
    std::string note;
    if (c.target == "fixture") {
      const auto f = grid2d::illustrative_fixture(c.seed);
      grid2d::write_map(body, f.grid);
      note = "start=" + to_string(f.start) + " goal=" + to_string(f.goal);
    } else if (c.target == "narrow") {
      const auto f = grid2d::narrow_passage_fixture();
      grid2d::write_map(body, f.grid);
      note = "start=" + to_string(f.start) + " goal=" + to_string(f.goal);
    } else if (c.target == "cul-de-sac") {
      grid2d::write_map(body, grid2d::cul_de_sac_map(c.size > 0 ? c.size : 256));
    } else if (c.target == "random") {
      const int n = c.size > 0 ? c.size : 64;
      grid2d::write_map(body, grid2d::noisy_obstacle_map(n, n, c.seed, 1, 9, 0.15));
    } else if (c.target == "primitives") {
      const auto set = uav4d::generate_primitives();
      uav4d::write_primitives(body, set);
      note = std::to_string(set.size()) + " primitives";
    } else {
      throw ConfigError("unknown gen target '" + c.target + "' (fixture, narrow, cul-de-sac, random, primitives)");
    }
    if (c.out.empty()) {
      out << body.str();
      return kOk;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << c.out << "'\n";
      return kError;
    }
    f << body.str();
    out << "wrote " << c.out;
    if (!note.empty()) out << " (" << note << ')';
    out << '\n';
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
}

inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.command == "plan") return cmd_plan(c, out, err);
  if (c.command == "bench") return cmd_bench(c, out, err);
  if (c.command == "verify") return cmd_verify(c, out, err);
  if (c.command == "gen") return cmd_gen(c, out, err);
  err << "error: unknown command '" << c.command << "'\n";
  return kError;
}

}  // namespace amra::cli
