#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "amra/core/types.hpp"

namespace amra::grid2d {

struct GridState {
  int x = 0;
  int y = 0;

  friend bool operator==(const GridState&, const GridState&) = default;
  friend auto operator<=>(const GridState&, const GridState&) = default;
};

inline std::string to_string(const GridState& s) {
  return std::to_string(s.x) + "," + std::to_string(s.y);
}

/// Per-cell traversal costs on a width x height map. kObstacle marks blocked
/// cells; every other cell costs at least 1.
class CostGrid {
 public:
  static constexpr std::int32_t kObstacle = -1;

  CostGrid() = default;
  CostGrid(int width, int height, std::int32_t fill = 1) : width_(width), height_(height) {
    if (width < 1 || height < 1) throw std::invalid_argument("grid dimensions must be >= 1");
    if (fill != kObstacle && fill < 1) throw std::invalid_argument("cell cost must be >= 1 or obstacle");
    cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] int height() const noexcept { return height_; }

  [[nodiscard]] bool in_bounds(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  [[nodiscard]] std::int32_t at(int x, int y) const { return cells_[index(x, y)]; }
  [[nodiscard]] bool passable(int x, int y) const noexcept {
    return in_bounds(x, y) && cells_[index(x, y)] != kObstacle;
  }

  void set(int x, int y, std::int32_t cost) {
    if (!in_bounds(x, y)) throw std::out_of_range("cell out of bounds");
    if (cost != kObstacle && cost < 1) throw std::invalid_argument("cell cost must be >= 1 or obstacle");
    cells_[index(x, y)] = cost;
    min_cost_valid_ = false;
  }

  /// Smallest passable cell cost (1 for an all-obstacle map).
  [[nodiscard]] std::int32_t min_cost() const {
    if (!min_cost_valid_) {
      std::int32_t m = 0;
      for (auto c : cells_) {
        if (c != kObstacle && (m == 0 || c < m)) m = c;
      }
      min_cost_ = m == 0 ? 1 : m;
      min_cost_valid_ = true;
    }
    return min_cost_;
  }

  [[nodiscard]] bool uniform() const {
    std::int32_t first = 0;
    for (auto c : cells_) {
      if (c == kObstacle) continue;
      if (first == 0) first = c;
      else if (c != first) return false;
    }
    return true;
  }

  friend bool operator==(const CostGrid& a, const CostGrid& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.cells_ == b.cells_;
  }

 private:
  [[nodiscard]] std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::int32_t> cells_;
  mutable std::int32_t min_cost_ = 1;
  mutable bool min_cost_valid_ = false;
};

/// Multi-resolution grid navigation domain. Resolution r moves in steps of
/// factors[r-1] fine cells along the 4 or 8 compass directions; coarse lattices
/// are anchored at cell (0, 0).
class Grid2D {
 public:
  using State = GridState;

  Grid2D(const CostGrid& grid, int connectivity, std::vector<int> factors)
      : grid_(&grid), connectivity_(connectivity), factors_(std::move(factors)) {
    if (connectivity != 4 && connectivity != 8) throw ContractViolation("connectivity must be 4 or 8");
    if (factors_.empty() || factors_.front() != 1) throw ContractViolation("resolution factors must start at 1");
    if (static_cast<int>(factors_.size()) > kMaxResolutions) throw ContractViolation("too many resolutions");
    for (std::size_t i = 1; i < factors_.size(); ++i) {
      if (factors_[i] <= factors_[i - 1]) throw ContractViolation("resolution factors must be strictly ascending");
    }
  }

  [[nodiscard]] int num_resolutions() const noexcept { return static_cast<int>(factors_.size()); }
  [[nodiscard]] int factor(int r) const { return factors_.at(static_cast<std::size_t>(r - 1)); }
  [[nodiscard]] const std::vector<int>& factors() const noexcept { return factors_; }
  [[nodiscard]] int connectivity() const noexcept { return connectivity_; }
  [[nodiscard]] const CostGrid& grid() const noexcept { return *grid_; }

  [[nodiscard]] bool valid(const GridState& s) const { return grid_->passable(s.x, s.y); }

  [[nodiscard]] ResolutionMask resolutions_of(const GridState& s) const {
    ResolutionMask mask = 0;
    for (int r = 1; r <= num_resolutions(); ++r) {
      const int f = factor(r);
      if (s.x % f == 0 && s.y % f == 0) mask |= resolution_bit(r);
    }
    return mask;
  }

  void successors(const GridState& s, int r, std::vector<Edge<GridState>>& out) const {
    if (!has_resolution(resolutions_of(s), r)) throw ContractViolation("state is not on resolution " + std::to_string(r));
    const int f = factor(r);
    for (int d = 0; d < connectivity_; ++d) {
      const auto [dx, dy] = kDirections[static_cast<std::size_t>(d)];
      const GridState to{s.x + dx * f, s.y + dy * f};
      const Cost c = swept_cost(s, dx, dy, f);
      if (c == kInfinity) continue;
      out.push_back({to, c, (r - 1) * 8 + d});
    }
  }

  /// Sum of the costs of the cells swept from `from` (exclusive) to `to`
  /// (inclusive). Infinite when the move is blocked, leaves the map, cuts an
  /// obstacle corner, or is neither axis-aligned nor an exact diagonal.
  [[nodiscard]] Cost action_cost(const GridState& from, const GridState& to) const {
    const int ddx = to.x - from.x;
    const int ddy = to.y - from.y;
    if (ddx == 0 && ddy == 0) return kInfinity;
    const int steps = std::max(std::abs(ddx), std::abs(ddy));
    if ((ddx != 0 && std::abs(ddx) != steps) || (ddy != 0 && std::abs(ddy) != steps)) return kInfinity;
    const int dx = ddx / steps;
    const int dy = ddy / steps;
    if (dx != 0 && dy != 0 && connectivity_ == 4) return kInfinity;
    return swept_cost(from, dx, dy, steps);
  }

  static constexpr std::array<std::pair<int, int>, 8> kDirections{{
      {1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};

 private:
  [[nodiscard]] Cost swept_cost(const GridState& from, int dx, int dy, int steps) const {
    const auto& g = *grid_;
    Cost total = 0;
    int px = from.x;
    int py = from.y;
    for (int k = 0; k < steps; ++k) {
      const int nx = px + dx;
      const int ny = py + dy;
      if (!g.passable(nx, ny)) return kInfinity;
      // no squeezing diagonally between two blocked cells or past a corner
      if (dx != 0 && dy != 0 && (!g.passable(px + dx, py) || !g.passable(px, py + dy))) return kInfinity;
      total += g.at(nx, ny);
      px = nx;
      py = ny;
    }
    return total;
  }

  const CostGrid* grid_;
  int connectivity_;
  std::vector<int> factors_;
};

}  // namespace amra::grid2d

template <>
struct std::hash<amra::grid2d::GridState> {
  std::size_t operator()(const amra::grid2d::GridState& s) const noexcept {
    return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.x)) << 32) |
                                      static_cast<std::uint32_t>(s.y));
  }
};
