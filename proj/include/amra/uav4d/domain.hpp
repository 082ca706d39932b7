#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "amra/core/domain.hpp"
#include "amra/core/types.hpp"
#include "amra/grid2d/grid.hpp"
#include "amra/uav4d/primitives.hpp"
#include "amra/uav4d/state.hpp"

namespace amra::uav4d {

/// Occupancy of the 3 m cells after growing every obstacle by `radius`
/// metres. A cell is blocked when its centre lies within `radius` of an
/// obstacle cell's centre.
class Occupancy {
 public:
  Occupancy(const grid2d::CostGrid& map, double radius) : width_(map.width()), height_(map.height()) {
    blocked_.assign(static_cast<std::size_t>(width_) * height_, 0);
    const int reach = static_cast<int>(std::floor(radius / kCellMetres + 1e-9));
    for (int y = 0; y < height_; ++y) {
      for (int x = 0; x < width_; ++x) {
        if (map.passable(x, y)) continue;
        for (int oy = -reach; oy <= reach; ++oy) {
          for (int ox = -reach; ox <= reach; ++ox) {
            if (std::hypot(ox, oy) * kCellMetres > radius + 1e-9) continue;
            const int cx = x + ox;
            const int cy = y + oy;
            if (cx >= 0 && cy >= 0 && cx < width_ && cy < height_) blocked_[index(cx, cy)] = 1;
          }
        }
      }
    }
  }

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] int height() const noexcept { return height_; }
  [[nodiscard]] bool free(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_ && blocked_[index(x, y)] == 0;
  }
  /// Metric point test: the point lies in the cell whose centre is nearest.
  [[nodiscard]] bool free_at(double px, double py) const noexcept {
    return free(static_cast<int>(std::lround(px / kCellMetres)), static_cast<int>(std::lround(py / kCellMetres)));
  }

 private:
  [[nodiscard]] std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> blocked_;
};

/// The 4D lattice. Resolution 1 moves in 3 m steps from every cell; resolution
/// 2 moves in 9 m steps from cells whose coordinates are multiples of 3.
/// Successor costs are primitive durations in seconds.
class Uav4D {
 public:
  using State = UavState;

  Uav4D(const grid2d::CostGrid& map, const PrimitiveSet& prims, double inflation = -1)
      : occ_(map, inflation < 0 ? prims.footprint_radius() : inflation), prims_(&prims) {}

  [[nodiscard]] int num_resolutions() const noexcept { return 2; }
  [[nodiscard]] const Occupancy& occupancy() const noexcept { return occ_; }
  [[nodiscard]] const PrimitiveSet& primitives() const noexcept { return *prims_; }

  [[nodiscard]] bool valid(const UavState& s) const {
    return s.theta >= 0 && s.theta < kHeadings && s.v >= 0 && s.v < kNumVelocities && occ_.free(s.x, s.y);
  }

  [[nodiscard]] ResolutionMask resolutions_of(const UavState& s) const {
    ResolutionMask m = resolution_bit(kHigh);
    if (s.x % kStepCells[kLow] == 0 && s.y % kStepCells[kLow] == 0) m |= resolution_bit(kLow);
    return m;
  }

  void successors(const UavState& s, int r, std::vector<Edge<UavState>>& out) const {
    if (!has_resolution(resolutions_of(s), r)) throw ContractViolation("state is not on resolution " + std::to_string(r));
    const double ox = s.x * kCellMetres;
    const double oy = s.y * kCellMetres;
    for (int id : prims_->group(r, s.theta, s.v)) {
      const auto& p = prims_->at(id);
      bool clear = true;
      for (const auto& pose : p.swept) {
        if (!occ_.free_at(ox + pose.x, oy + pose.y)) {
          clear = false;
          break;
        }
      }
      if (!clear) continue;
      out.push_back({UavState{s.x + p.dx, s.y + p.dy, p.end_theta, p.end_v}, p.duration, id});
    }
  }

 private:
  Occupancy occ_;
  const PrimitiveSet* prims_;
};

static_assert(SearchDomain<Uav4D>);

/// Goal region: a position and heading, any velocity.
inline GoalTest<UavState> goal_pose(UavState goal) {
  return [goal](const UavState& s) { return s.x == goal.x && s.y == goal.y && s.theta == goal.theta; };
}

}  // namespace amra::uav4d
