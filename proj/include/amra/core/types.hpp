#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace amra {

// Costs are doubles throughout. Integer-cost domains stay exact because every
// partial sum is an integer well below 2^53.
using Cost = double;
inline constexpr Cost kInfinity = std::numeric_limits<Cost>::infinity();

// Bit r set <=> the state lies on resolution r. Bit 0 is the anchor (union)
// resolution and is never reported by a domain.
using ResolutionMask = std::uint32_t;
inline constexpr int kMaxResolutions = 31;

constexpr bool has_resolution(ResolutionMask mask, int r) noexcept {
  return (mask >> r) & 1U;
}
constexpr ResolutionMask resolution_bit(int r) noexcept { return ResolutionMask{1} << r; }

/// Thrown when a caller breaks an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

template <typename State>
struct Edge {
  State to;
  Cost cost = 0;
  int action = -1;
};

/// A cost-to-go estimate bound to the resolution its queue searches.
/// Index 0 in a heuristic list is the anchor and must use res = 0.
template <typename State>
struct HeuristicSpec {
  int res = 0;
  std::function<Cost(const State&)> evaluate;
  std::string name;
};

template <typename State>
struct Waypoint {
  State state;
  int action = -1;  // action that reached this waypoint, -1 for the start
  Cost g = 0;       // cost accumulated along the path
};

struct IterationStats {
  std::uint64_t expansions_total = 0;  // accumulated over the whole run
  std::uint64_t expansions_iteration = 0;
  std::vector<std::uint64_t> expansions_per_queue;
  std::vector<std::uint64_t> expansions_per_resolution;
  std::uint32_t max_expansions_of_any_state = 0;
  double time_to_publish_ms = 0;
  std::vector<std::size_t> open_sizes;
};

template <typename State>
struct SolutionRecord {
  std::vector<Waypoint<State>> path;
  Cost cost = 0;
  double bound = 1;
  double w1 = 1;
  double w2 = 1;
  int iteration = 0;
  IterationStats stats;
};

/// Geometric decay of both weights, clamped below at 1. Once both weights are
/// within `snap_epsilon` of 1 the next step lands exactly on (1, 1).
struct WeightSchedule {
  double decay = 0.5;
  double snap_epsilon = 1e-9;

  [[nodiscard]] std::pair<double, double> next(double w1, double w2) const {
    if (w1 < 1 || w2 < 1) throw ContractViolation("weights must be >= 1");
    if (w1 <= 1 + snap_epsilon && w2 <= 1 + snap_epsilon) return {1.0, 1.0};
    double n1 = std::max(1.0, w1 * decay);
    double n2 = std::max(1.0, w2 * decay);
    if (n1 <= 1 + snap_epsilon) n1 = 1;
    if (n2 <= 1 + snap_epsilon) n2 = 1;
    return {n1, n2};
  }
};

enum class TieBreak {
  kLowHeuristicThenLifo,  // default: smaller h_i, then most recent insertion
  kLowHeuristicThenFifo,
};

struct PlannerConfig {
  double w1_init = 3.0;
  double w2_init = 2.0;
  WeightSchedule weight_schedule{};
  std::optional<std::chrono::milliseconds> time_budget;
  std::optional<std::uint64_t> expansion_budget;
  bool anytime = true;  // false: stop after the first improve_path call
  TieBreak tie_break = TieBreak::kLowHeuristicThenLifo;

  void validate() const {
    if (!(w1_init >= 1) || !(w2_init >= 1)) throw ContractViolation("w1_init and w2_init must be >= 1");
    if (!(weight_schedule.decay > 0) || !(weight_schedule.decay < 1))
      throw ContractViolation("weight decay must lie in (0, 1)");
  }
};

}  // namespace amra
