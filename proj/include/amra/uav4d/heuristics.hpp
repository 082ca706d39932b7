#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <numbers>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include "amra/core/types.hpp"
#include "amra/uav4d/domain.hpp"
#include "amra/uav4d/state.hpp"

namespace amra::uav4d {

inline constexpr double kDefaultTurnRadius = kMaxSpeed * kMaxSpeed / 8.0;

/// Straight-line distance to the goal position over the top speed, in
/// seconds. Admissible and consistent for the least-time objective.
inline Cost euclidean_time(const UavState& a, const UavState& b) {
  return kCellMetres * std::hypot(a.x - b.x, a.y - b.y) / kMaxSpeed;
}

enum class DubinsWord { kLSL, kRSR, kLSR, kRSL, kRLR, kLRL };

/// Shortest Dubins path length in metres between two poses with turn radius
/// rho, over the six words.
inline double dubins_length(const Pose& a, const Pose& b, double rho) {
  if (!(rho > 0)) throw ContractViolation("turn radius must be positive");
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double D = std::hypot(dx, dy);
  const double d = D / rho;
  if (d < 1e-12 && angle_distance(a.theta, b.theta) < 1e-12) return 0;
  const double phi = D > 0 ? std::atan2(dy, dx) : 0.0;
  const double al = wrap_angle(a.theta - phi);
  const double be = wrap_angle(b.theta - phi);
  const double sa = std::sin(al);
  const double sb = std::sin(be);
  const double ca = std::cos(al);
  const double cb = std::cos(be);
  const double cab = std::cos(al - be);
  double best = kInfinity;
  auto take = [&](double t, double p, double q) { best = std::min(best, t + p + q); };

  {  // LSL
    const double p2 = 2 + d * d - 2 * cab + 2 * d * (sa - sb);
    if (p2 >= 0) {
      const double tmp = std::atan2(cb - ca, d + sa - sb);
      take(wrap_angle(tmp - al), std::sqrt(p2), wrap_angle(be - tmp));
    }
  }
  {  // RSR
    const double p2 = 2 + d * d - 2 * cab + 2 * d * (sb - sa);
    if (p2 >= 0) {
      const double tmp = std::atan2(ca - cb, d - sa + sb);
      take(wrap_angle(al - tmp), std::sqrt(p2), wrap_angle(tmp - be));
    }
  }
  {  // LSR
    const double p2 = -2 + d * d + 2 * cab + 2 * d * (sa + sb);
    if (p2 >= 0) {
      const double p = std::sqrt(p2);
      const double tmp = std::atan2(-ca - cb, d + sa + sb) - std::atan2(-2.0, p);
      take(wrap_angle(tmp - al), p, wrap_angle(tmp - be));
    }
  }
  {  // RSL
    const double p2 = -2 + d * d + 2 * cab - 2 * d * (sa + sb);
    if (p2 >= 0) {
      const double p = std::sqrt(p2);
      const double tmp = std::atan2(ca + cb, d - sa - sb) - std::atan2(2.0, p);
      take(wrap_angle(al - tmp), p, wrap_angle(be - tmp));
    }
  }
  {  // RLR
    const double c = (6 - d * d + 2 * cab + 2 * d * (sa - sb)) / 8;
    if (std::abs(c) <= 1) {
      const double p = wrap_angle(2 * std::numbers::pi - std::acos(c));
      const double t = wrap_angle(al - std::atan2(ca - cb, d - sa + sb) + p / 2);
      take(t, p, wrap_angle(al - be - t + p));
    }
  }
  {  // LRL
    const double c = (6 - d * d + 2 * cab + 2 * d * (sb - sa)) / 8;
    if (std::abs(c) <= 1) {
      const double p = wrap_angle(2 * std::numbers::pi - std::acos(c));
      const double t = wrap_angle(-al - std::atan2(ca - cb, d + sa - sb) + p / 2);
      take(t, p, wrap_angle(be - al - t + p));
    }
  }
  return best * rho;
}

/// Dubins length between two lattice states over the top speed, in seconds.
inline Cost dubins_distance(const UavState& a, const UavState& b, double rho = kDefaultTurnRadius) {
  return dubins_length(pose_of(a), pose_of(b), rho) / kMaxSpeed;
}

/// Exact 8-connected shortest distances in metres from every free cell to the
/// goal cell over the inflated occupancy. Unreachable cells hold +inf.
class BackwardDijkstra {
 public:
  BackwardDijkstra(const Occupancy& occ, int goal_x, int goal_y)
      : width_(occ.width()), height_(occ.height()), dist_(static_cast<std::size_t>(width_) * height_, kInfinity) {
    if (!occ.free(goal_x, goal_y)) return;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist_[index(goal_x, goal_y)] = 0;
    heap.push({0, static_cast<int>(index(goal_x, goal_y))});
    const double diag = kCellMetres * std::numbers::sqrt2;
    while (!heap.empty()) {
      const auto [d, i] = heap.top();
      heap.pop();
      if (d > dist_[static_cast<std::size_t>(i)]) continue;
      const int x = i % width_;
      const int y = i / width_;
      for (int oy = -1; oy <= 1; ++oy) {
        for (int ox = -1; ox <= 1; ++ox) {
          if (ox == 0 && oy == 0) continue;
          const int nx = x + ox;
          const int ny = y + oy;
          if (!occ.free(nx, ny)) continue;
          const double nd = d + (ox != 0 && oy != 0 ? diag : kCellMetres);
          auto& slot = dist_[index(nx, ny)];
          if (nd < slot) {
            slot = nd;
            heap.push({nd, static_cast<int>(index(nx, ny))});
          }
        }
      }
    }
  }

  /// Metres; +inf outside the map or when unreachable.
  [[nodiscard]] double metres(int x, int y) const {
    if (x < 0 || y < 0 || x >= width_ || y >= height_) return kInfinity;
    return dist_[index(x, y)];
  }
  [[nodiscard]] Cost seconds(const UavState& s) const { return metres(s.x, s.y) / kMaxSpeed; }
  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] int height() const noexcept { return height_; }

 private:
  [[nodiscard]] std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<double> dist_;
};

/// Heuristic families for a goal pose: the Euclidean anchor first, then the
/// named extras ("dubins", "dijkstra", "euclidean").
inline std::vector<HeuristicSpec<UavState>> heuristic_families(const Uav4D& domain, UavState goal,
                                                               const std::vector<std::string>& extra = {"dubins",
                                                                                                        "dijkstra"},
                                                               double rho = kDefaultTurnRadius) {
  std::vector<HeuristicSpec<UavState>> fams;
  fams.push_back({0, [goal](const UavState& s) { return euclidean_time(s, goal); }, "euclidean"});
  std::shared_ptr<const BackwardDijkstra> table;
  for (const auto& name : extra) {
    if (name == "euclidean") {
      fams.push_back({0, [goal](const UavState& s) { return euclidean_time(s, goal); }, "euclidean"});
    } else if (name == "dubins") {
      fams.push_back({0, [goal, rho](const UavState& s) { return dubins_distance(s, goal, rho); }, "dubins"});
    } else if (name == "dijkstra") {
      if (!table) table = std::make_shared<const BackwardDijkstra>(domain.occupancy(), goal.x, goal.y);
      fams.push_back({0, [table](const UavState& s) { return table->seconds(s); }, "dijkstra"});
    } else {
      throw ContractViolation("unknown uav heuristic '" + name + "'");
    }
  }
  return fams;
}

}  // namespace amra::uav4d
