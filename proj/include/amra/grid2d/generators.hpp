#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "amra/core/random.hpp"
#include "amra/grid2d/grid.hpp"

namespace amra::grid2d {

/// Smooth seeded value noise quantised to integer costs in [lo, hi]. Random
/// values on a lattice of spacing `cell` are blended with smoothstep-weighted
/// bilinear interpolation.
inline CostGrid value_noise_map(int width, int height, std::uint64_t seed, int lo, int hi, int cell = 8) {
  Rng rng(seed);
  const int lw = width / cell + 2;
  const int lh = height / cell + 2;
  std::vector<double> lattice(static_cast<std::size_t>(lw * lh));
  for (auto& v : lattice) v = rng.uniform01();
  auto at = [&](int i, int j) { return lattice[static_cast<std::size_t>(j * lw + i)]; };
  auto smooth = [](double t) { return t * t * (3 - 2 * t); };

  CostGrid g(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int i = x / cell;
      const int j = y / cell;
      const double tx = smooth(static_cast<double>(x % cell) / cell);
      const double ty = smooth(static_cast<double>(y % cell) / cell);
      const double top = at(i, j) * (1 - tx) + at(i + 1, j) * tx;
      const double bottom = at(i, j + 1) * (1 - tx) + at(i + 1, j + 1) * tx;
      const double v = top * (1 - ty) + bottom * ty;
      const int c = lo + static_cast<int>(std::floor(v * (hi - lo + 1)));
      g.set(x, y, std::clamp(c, lo, hi));
    }
  }
  return g;
}

/// Independent per-cell costs in [lo, hi] with obstacle probability p.
inline CostGrid random_map(int width, int height, std::uint64_t seed, double obstacle_p, int lo = 1, int hi = 1) {
  Rng rng(seed);
  CostGrid g(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const bool blocked = rng.bernoulli(obstacle_p);
      const auto c = static_cast<std::int32_t>(rng.uniform_int(lo, hi));
      g.set(x, y, blocked ? CostGrid::kObstacle : c);
    }
  }
  return g;
}

/// Value-noise costs plus rectangular obstacle blocks covering roughly
/// `block_fraction` of the map.
inline CostGrid noisy_obstacle_map(int width, int height, std::uint64_t seed, int lo, int hi, double block_fraction,
                                   int cell = 8) {
  CostGrid g = value_noise_map(width, height, seed, lo, hi, cell);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const long target = static_cast<long>(block_fraction * width * height);
  long blocked = 0;
  while (blocked < target) {
    const int bw = static_cast<int>(rng.uniform_int(1, std::max(1, width / 8)));
    const int bh = static_cast<int>(rng.uniform_int(1, std::max(1, height / 8)));
    const int x0 = static_cast<int>(rng.uniform_int(0, width - 1));
    const int y0 = static_cast<int>(rng.uniform_int(0, height - 1));
    for (int y = y0; y < std::min(height, y0 + bh); ++y) {
      for (int x = x0; x < std::min(width, x0 + bw); ++x) {
        if (g.at(x, y) != CostGrid::kObstacle) ++blocked;
        g.set(x, y, CostGrid::kObstacle);
      }
    }
  }
  return g;
}

inline void fill_rect(CostGrid& g, int x0, int y0, int x1, int y1, std::int32_t cost) {
  for (int y = std::max(0, y0); y <= std::min(g.height() - 1, y1); ++y)
    for (int x = std::max(0, x0); x <= std::min(g.width() - 1, x1); ++x) g.set(x, y, cost);
}

/// Blocks every cell on the square ring at Chebyshev distance `radius` around
/// `centre`, sealing it off at every resolution.
inline void wall_in(CostGrid& g, GridState centre, int radius) {
  for (int d = -radius; d <= radius; ++d) {
    for (auto [x, y] : {std::pair{centre.x + d, centre.y - radius}, std::pair{centre.x + d, centre.y + radius},
                        std::pair{centre.x - radius, centre.y + d}, std::pair{centre.x + radius, centre.y + d}}) {
      if (g.in_bounds(x, y)) g.set(x, y, CostGrid::kObstacle);
    }
  }
}

/// Illustrative 50x50 map: value-noise costs in [10, 260] and a cul-de-sac
/// that opens away from the goal. Start and goal lie on the 9-cell lattice.
struct Fixture {
  CostGrid grid;
  GridState start;
  GridState goal;
};

inline Fixture illustrative_fixture(std::uint64_t seed = 61) {
  Fixture f{value_noise_map(50, 50, seed, 10, 260, 10), {18, 27}, {45, 27}};
  fill_rect(f.grid, 30, 12, 30, 40, CostGrid::kObstacle);  // back wall
  fill_rect(f.grid, 12, 12, 30, 12, CostGrid::kObstacle);  // upper arm
  fill_rect(f.grid, 12, 40, 30, 40, CostGrid::kObstacle);  // lower arm
  return f;
}

/// 64x64 unit-cost map split by a thick wall whose only crossing is a corridor
/// one cell wide at a row that no coarse lattice (7 or 21) reaches.
inline Fixture narrow_passage_fixture() {
  Fixture f{CostGrid(64, 64), {21, 21}, {42, 21}};
  fill_rect(f.grid, 29, 0, 34, 63, CostGrid::kObstacle);
  fill_rect(f.grid, 29, 10, 34, 10, 1);
  return f;
}

/// Open unit-cost map with a large cul-de-sac: a U-shaped wall whose closed
/// side faces the goal. `size` is the side length; the cup spans the middle
/// half of the map.
inline CostGrid cul_de_sac_map(int size = 256) {
  CostGrid g(size, size);
  const int lo = size / 4;
  const int hi = 3 * size / 4;
  const int back = 5 * size / 8;
  const int t = 2;
  fill_rect(g, back, lo, back + t, hi, CostGrid::kObstacle);
  fill_rect(g, size / 8, lo, back + t, lo + t, CostGrid::kObstacle);
  fill_rect(g, size / 8, hi - t, back + t, hi, CostGrid::kObstacle);
  return g;
}

}  // namespace amra::grid2d
