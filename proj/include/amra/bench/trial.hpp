#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "amra/core/domain.hpp"
#include "amra/core/planner.hpp"
#include "amra/core/presets.hpp"

namespace amra::bench {

/// One published solution: the weights' bound, the path cost, when it was
/// published and how many expansions it took.
struct CurvePoint {
  double bound = 0;
  double cost = 0;
  double time_ms = 0;
  std::uint64_t expansions = 0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// A trial row. Times and costs are absent when no solution was found.
struct TrialResult {
  std::string map;
  std::string preset;
  int trial = 0;
  bool success = false;
  bool timeout = false;
  std::optional<double> t_i_ms;
  std::optional<double> t_f_ms;
  std::optional<double> c_i;
  std::optional<double> c_f;
  std::uint64_t expansions = 0;
  int iterations = 0;
  std::vector<CurvePoint> curve;
  std::string error;  // set when the trial threw; not written to the CSV

  friend bool operator==(const TrialResult& a, const TrialResult& b) {
    return a.map == b.map && a.preset == b.preset && a.trial == b.trial && a.success == b.success &&
           a.timeout == b.timeout && a.t_i_ms == b.t_i_ms && a.t_f_ms == b.t_f_ms && a.c_i == b.c_i &&
           a.c_f == b.c_f && a.expansions == b.expansions && a.iterations == b.iterations;
  }
};

/// A preset as named on the command line:
///   amra | mra[-<family>] | ara|wa|mha|amha[-high|-mid|-low]
/// Single-resolution kinds default to the finest resolution.
struct NamedPreset {
  std::string name;
  Preset preset;
};

inline NamedPreset parse_named_preset(std::string_view name, int num_resolutions,
                                      const std::vector<std::string>& family_names) {
  const auto dash = name.find('-');
  const std::string_view head = name.substr(0, dash);
  const std::string_view tail = dash == std::string_view::npos ? std::string_view{} : name.substr(dash + 1);
  const auto kind = parse_preset_kind(head);
  if (!kind) throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
  PresetOptions opt;
  opt.num_resolutions = num_resolutions;
  opt.num_families = static_cast<int>(family_names.size());
  switch (*kind) {
    case PresetKind::kAMRAStar:
      if (!tail.empty()) throw std::invalid_argument("preset 'amra' takes no suffix");
      break;
    case PresetKind::kMRAStar:
      if (!tail.empty()) {
        const auto it = std::find(family_names.begin(), family_names.end(), tail);
        if (it == family_names.end()) throw std::invalid_argument("unknown heuristic family '" + std::string(tail) + "'");
        opt.family = static_cast<int>(it - family_names.begin());
      }
      break;
    default:
      if (tail.empty() || tail == "high") {
        opt.resolution = 1;
      } else if (tail == "mid") {
        opt.resolution = (num_resolutions + 1) / 2;
      } else if (tail == "low") {
        opt.resolution = num_resolutions;
      } else {
        throw std::invalid_argument("unknown resolution suffix in '" + std::string(name) + "'");
      }
  }
  return {std::string(name), make_preset(*kind, opt)};
}

/// Runs one planner instance of `preset` on `domain`. T_i is the first
/// publication. T_f is the final publication when the run completes and the
/// last cost improvement when it runs out of budget.
template <SearchDomain D>
TrialResult run_trial(const D& domain, const std::vector<HeuristicSpec<typename D::State>>& families,
                      const Preset& preset, const typename D::State& start, const GoalTest<typename D::State>& goal,
                      const PlannerConfig& base) {
  ResolutionSubset<D> sub(domain, preset.resolutions);
  AmraPlanner<ResolutionSubset<D>> planner(sub, build_heuristics(preset, families), preset.apply(base));
  const auto res = planner.plan(start, goal);

  TrialResult r;
  r.success = res.solved();
  r.timeout = res.status == PlanStatus::kBudgetExhausted;
  r.expansions = res.stats.expansions_total;
  r.iterations = res.iterations;
  for (const auto& s : res.solutions)
    r.curve.push_back({s.bound, s.cost, s.stats.time_to_publish_ms, s.stats.expansions_total});
  if (r.success) {
    r.t_i_ms = r.curve.front().time_ms;
    r.c_i = r.curve.front().cost;
    r.c_f = r.curve.back().cost;
    double last = r.curve.front().time_ms;
    for (std::size_t i = 1; i < r.curve.size(); ++i)
      if (r.curve[i].cost < r.curve[i - 1].cost) last = r.curve[i].time_ms;
    r.t_f_ms = r.timeout ? last : r.curve.back().time_ms;
  }
  return r;
}

/// Zeroes every wall-clock field so that repeated runs compare byte-for-byte.
inline void strip_timing(TrialResult& r) {
  if (r.t_i_ms) r.t_i_ms = 0.0;
  if (r.t_f_ms) r.t_f_ms = 0.0;
  for (auto& p : r.curve) p.time_ms = 0;
}

}  // namespace amra::bench
