#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "amra/bench/instances.hpp"
#include "amra/bench/oracle.hpp"
#include "amra/core/planner.hpp"
#include "amra/core/presets.hpp"
#include "amra/grid2d/heuristics.hpp"

namespace amra::bench {

struct PropertyResult {
  std::string name;
  bool passed = true;
  int checked = 0;
  std::string detail;                         // first violation, human-readable
  std::optional<GridInstance> counterexample;  // replayable instance
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int instances = 20;
  GridInstanceOptions grid;
  PlannerConfig planner;
};

/// Runs full AMRA* (every family at every resolution) on a grid instance.
inline PlanResult<grid2d::GridState> run_amra(const GridInstance& inst, const PlannerConfig& cfg,
                                               const std::vector<std::string>& extra = {}) {
  const auto d = inst.domain();
  const auto fams = grid2d::heuristic_families(d, inst.goal, extra);
  PresetOptions po;
  po.num_resolutions = d.num_resolutions();
  po.num_families = static_cast<int>(fams.size());
  const auto preset = make_preset(PresetKind::kAMRAStar, po);
  AmraPlanner<grid2d::Grid2D> planner(d, build_heuristics(preset, fams), preset.apply(cfg));
  return planner.plan(inst.start, inst.goal_test());
}

namespace detail {

inline void fail(PropertyResult& r, const GridInstance& inst, std::string why) {
  if (!r.passed) return;
  r.passed = false;
  r.detail = "seed " + std::to_string(inst.seed) + ": " + std::move(why);
  r.counterexample = inst;
}

}  // namespace detail

/// Anytime bound: every published cost <= w1*w2 * optimum, costs and bounds
/// non-increasing, and the final (1, 1) solution optimal.
inline PropertyResult verify_bounded_suboptimality(const VerifyOptions& opt) {
  PropertyResult r{"bounded-suboptimality", true, 0, {}, {}};
  for (int k = 0; k < opt.instances; ++k) {
    const auto inst = random_grid_instance(opt.seed + static_cast<std::uint64_t>(k), opt.grid);
    const Cost best = *oracle_opt(inst.domain(), inst.start, inst.goal_test());
    const auto res = run_amra(inst, opt.planner);
    ++r.checked;
    if (!res.solved()) {
      detail::fail(r, inst, "no solution on a solvable instance");
      continue;
    }
    for (std::size_t i = 0; i < res.solutions.size(); ++i) {
      const auto& s = res.solutions[i];
      if (s.cost > s.bound * best)
        detail::fail(r, inst, "cost " + format_number(s.cost) + " exceeds " + format_number(s.bound) + " x " + format_number(best));
      if (i > 0 && (s.cost > res.solutions[i - 1].cost || s.bound > res.solutions[i - 1].bound))
        detail::fail(r, inst, "published sequence not monotone at " + std::to_string(i));
    }
    if (res.status == PlanStatus::kComplete && (res.best().bound != 1.0 || res.best().cost != best))
      detail::fail(r, inst, "final cost " + format_number(res.best().cost) + " != optimum " + format_number(best));
  }
  return r;
}

/// At most N+1 expansions of any state within one improve_path call.
inline PropertyResult verify_bounded_reexpansions(const VerifyOptions& opt) {
  PropertyResult r{"bounded-reexpansions", true, 0, {}, {}};
  for (int k = 0; k < opt.instances; ++k) {
    const auto inst = random_grid_instance(opt.seed + static_cast<std::uint64_t>(k), opt.grid);
    const auto res = run_amra(inst, opt.planner);
    ++r.checked;
    const auto limit = static_cast<std::uint32_t>(inst.factors.size() + 1);
    if (res.stats.max_expansions_of_any_state > limit)
      detail::fail(r, inst, std::to_string(res.stats.max_expansions_of_any_state) + " expansions of one state, limit " +
                                std::to_string(limit));
  }
  return r;
}

/// Failure exactly when the oracle finds the goal unreachable.
inline PropertyResult verify_completeness(const VerifyOptions& opt) {
  PropertyResult r{"completeness", true, 0, {}, {}};
  for (int k = 0; k < opt.instances; ++k) {
    for (bool walled : {false, true}) {
      const auto seed = opt.seed + static_cast<std::uint64_t>(k);
      const auto inst = walled ? walled_grid_instance(seed, opt.grid) : random_grid_instance(seed, opt.grid);
      const bool reachable = *oracle_opt(inst.domain(), inst.start, inst.goal_test()) < kInfinity;
      const auto res = run_amra(inst, opt.planner);
      ++r.checked;
      if (reachable && !res.solved()) detail::fail(r, inst, "no solution on a reachable goal");
      if (!reachable && res.status != PlanStatus::kNoPath) detail::fail(r, inst, "did not report failure on an unreachable goal");
    }
  }
  return r;
}

inline std::vector<PropertyResult> verify_all(const VerifyOptions& opt) {
  return {verify_bounded_reexpansions(opt), verify_completeness(opt), verify_bounded_suboptimality(opt)};
}

}  // namespace amra::bench
