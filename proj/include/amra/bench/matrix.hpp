#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "amra/bench/problems.hpp"
#include "amra/bench/trial.hpp"
#include "amra/grid2d/grid.hpp"
#include "amra/grid2d/heuristics.hpp"
#include "amra/uav4d/domain.hpp"
#include "amra/uav4d/heuristics.hpp"

namespace amra::bench {

struct TrialTask {
  std::string map;
  std::string preset;
  int trial = 0;
  std::function<TrialResult()> run;
};

/// Runs every task on up to `jobs` threads. A task that throws becomes a
/// failed row carrying the message. Output order is task order.
inline std::vector<TrialResult> run_tasks(const std::vector<TrialTask>& tasks, int jobs) {
  std::vector<TrialResult> out(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto& t = tasks[i];
      TrialResult r;
      try {
        r = t.run();
      } catch (const std::exception& e) {
        r = TrialResult{};
        r.error = e.what();
      } catch (...) {
        r = TrialResult{};
        r.error = "unknown exception";
      }
      r.map = t.map;
      r.preset = t.preset;
      r.trial = t.trial;
      out[i] = std::move(r);
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  if (n == 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  for (int k = 0; k < n; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

/// Per-map problem seed, so adding maps does not reshuffle earlier ones.
inline std::uint64_t map_seed(std::uint64_t seed, std::size_t map_index) {
  return seed + 0x9e3779b97f4a7c15ULL * (map_index + 1);
}

struct GridMapEntry {
  std::string id;
  std::shared_ptr<const grid2d::CostGrid> grid;
};

struct GridMatrixOptions {
  std::vector<int> factors{1, 7, 21};
  int connectivity = 4;
  std::vector<std::string> extra_heuristics;
  std::vector<std::string> presets{"amra", "ara-high", "ara-mid", "ara-low", "mra"};
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  PlannerConfig planner;
};

/// Tasks in (map, preset, trial) order. Problems are sampled once per map and
/// shared by every preset.
inline std::vector<TrialTask> grid_matrix_tasks(const std::vector<GridMapEntry>& maps, const GridMatrixOptions& opt) {
  std::vector<TrialTask> tasks;
  for (std::size_t m = 0; m < maps.size(); ++m) {
    auto domain = std::make_shared<const grid2d::Grid2D>(*maps[m].grid, opt.connectivity, opt.factors);
    const auto problems = sample_problems(*domain, opt.trials, map_seed(opt.seed, m));
    std::vector<std::string> names{grid2d::anchor_heuristic(*domain, {0, 0}).name};
    for (const auto& e : opt.extra_heuristics) names.push_back(e);
    for (const auto& pname : opt.presets) {
      const auto preset = parse_named_preset(pname, domain->num_resolutions(), names);
      for (std::size_t t = 0; t < problems.size(); ++t) {
        const auto pr = problems[t];
        const auto grid = maps[m].grid;
        tasks.push_back({maps[m].id, pname, static_cast<int>(t), [domain, grid, pr, preset, opt] {
                           const auto fams = grid2d::heuristic_families(*domain, pr.goal, opt.extra_heuristics);
                           const grid2d::GridState goal = pr.goal;
                           return run_trial(*domain, fams, preset.preset, pr.start,
                                            GoalTest<grid2d::GridState>([goal](const auto& s) { return s == goal; }),
                                            opt.planner);
                         }});
      }
    }
  }
  return tasks;
}

struct UavMapEntry {
  std::string id;
  std::shared_ptr<const grid2d::CostGrid> grid;
};

struct UavMatrixOptions {
  std::shared_ptr<const uav4d::PrimitiveSet> primitives;
  double inflation = -1;  // negative: the primitive file's footprint radius
  std::vector<std::string> heuristics{"dubins", "dijkstra"};
  double turn_radius = uav4d::kDefaultTurnRadius;
  std::vector<std::string> presets{"amra", "ara-high", "ara-low", "mra"};
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  PlannerConfig planner;
};

inline std::vector<TrialTask> uav_matrix_tasks(const std::vector<UavMapEntry>& maps, const UavMatrixOptions& opt) {
  std::vector<TrialTask> tasks;
  for (std::size_t m = 0; m < maps.size(); ++m) {
    auto domain = std::make_shared<const uav4d::Uav4D>(*maps[m].grid, *opt.primitives, opt.inflation);
    const auto problems = sample_problems(*domain, opt.trials, map_seed(opt.seed, m));
    std::vector<std::string> names{"euclidean"};
    for (const auto& e : opt.heuristics) names.push_back(e);
    for (const auto& pname : opt.presets) {
      const auto preset = parse_named_preset(pname, domain->num_resolutions(), names);
      for (std::size_t t = 0; t < problems.size(); ++t) {
        const auto pr = problems[t];
        const auto grid = maps[m].grid;
        const auto prims = opt.primitives;
        tasks.push_back({maps[m].id, pname, static_cast<int>(t), [domain, grid, prims, pr, preset, opt] {
                           const auto fams = uav4d::heuristic_families(*domain, pr.goal, opt.heuristics, opt.turn_radius);
                           return run_trial(*domain, fams, preset.preset, pr.start, uav4d::goal_pose(pr.goal),
                                            opt.planner);
                         }});
      }
    }
  }
  return tasks;
}

}  // namespace amra::bench
