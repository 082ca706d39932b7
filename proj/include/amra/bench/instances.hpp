#pragma once

#include <cstdint>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "amra/bench/oracle.hpp"
#include "amra/bench/problems.hpp"
#include "amra/grid2d/generators.hpp"
#include "amra/grid2d/grid.hpp"
#include "amra/grid2d/map_io.hpp"

namespace amra::bench {

/// A seeded grid problem with its domain settings.
struct GridInstance {
  std::uint64_t seed = 0;
  std::shared_ptr<grid2d::CostGrid> grid;
  std::vector<int> factors;
  int connectivity = 8;
  grid2d::GridState start;
  grid2d::GridState goal;

  [[nodiscard]] grid2d::Grid2D domain() const { return grid2d::Grid2D(*grid, connectivity, factors); }
  [[nodiscard]] GoalTest<grid2d::GridState> goal_test() const {
    const auto g = goal;
    return [g](const grid2d::GridState& s) { return s == g; };
  }

  /// Replayable text: a comment line with the settings, then the map.
  [[nodiscard]] std::string serialize() const {
    std::ostringstream os;
    os << "# seed=" << seed << " connectivity=" << connectivity << " factors=";
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "," : "") << factors[i];
    os << " start=" << start.x << ',' << start.y << " goal=" << goal.x << ',' << goal.y << '\n';
    grid2d::write_map(os, *grid);
    return os.str();
  }
};

struct GridInstanceOptions {
  int size = 64;
  std::vector<int> factors{1, 3, 9};
  int connectivity = 8;
  int cost_lo = 1;
  int cost_hi = 9;
  double obstacle_fraction = 0.15;
};

/// Value-noise costs with rectangular obstacles; start and goal on the
/// coarsest lattice and connected in the union graph.
inline GridInstance random_grid_instance(std::uint64_t seed, const GridInstanceOptions& opt = {}) {
  GridInstance inst;
  inst.seed = seed;
  inst.factors = opt.factors;
  inst.connectivity = opt.connectivity;
  inst.grid = std::make_shared<grid2d::CostGrid>(
      grid2d::noisy_obstacle_map(opt.size, opt.size, seed, opt.cost_lo, opt.cost_hi, opt.obstacle_fraction));
  const auto d = inst.domain();
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const auto p = sample_problems(d, 1, seed * 1000 + k).front();
    const GoalTest<grid2d::GridState> at_goal = [g = p.goal](const grid2d::GridState& s) { return s == g; };
    const auto opt_cost = oracle_opt(d, p.start, at_goal);
    if (opt_cost && *opt_cost < kInfinity) {
      inst.start = p.start;
      inst.goal = p.goal;
      return inst;
    }
  }
  throw std::runtime_error("no connected coarse pair for seed " + std::to_string(seed));
}

/// Same as random_grid_instance, then the goal is sealed inside a ring of
/// obstacles so that no resolution can reach it.
inline GridInstance walled_grid_instance(std::uint64_t seed, const GridInstanceOptions& opt = {}) {
  auto inst = random_grid_instance(seed, opt);
  grid2d::wall_in(*inst.grid, inst.goal, 2);
  return inst;
}

}  // namespace amra::bench
