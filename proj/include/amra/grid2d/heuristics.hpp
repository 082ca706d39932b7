#pragma once

#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "amra/core/types.hpp"
#include "amra/grid2d/grid.hpp"

namespace amra::grid2d {

// Distances are scaled by the map's minimum cell cost so they stay admissible
// on non-uniform maps.

inline Cost manhattan(const GridState& a, const GridState& b, Cost scale = 1) {
  return scale * static_cast<Cost>(std::abs(a.x - b.x) + std::abs(a.y - b.y));
}

inline Cost euclidean(const GridState& a, const GridState& b, Cost scale = 1) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return scale * std::sqrt(dx * dx + dy * dy);
}

/// Exact free-space distance on an 8-connected grid whose diagonal step
/// sweeps a single cell.
inline Cost chebyshev(const GridState& a, const GridState& b, Cost scale = 1) {
  return scale * static_cast<Cost>(std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)));
}

/// The consistent distance for the domain's connectivity: Manhattan on 4-
/// connected grids, Chebyshev on 8-connected ones.
inline HeuristicSpec<GridState> anchor_heuristic(const Grid2D& domain, GridState goal) {
  const Cost scale = domain.grid().min_cost();
  if (domain.connectivity() == 4) {
    return {0, [goal, scale](const GridState& s) { return manhattan(s, goal, scale); }, "manhattan"};
  }
  return {0, [goal, scale](const GridState& s) { return chebyshev(s, goal, scale); }, "chebyshev"};
}

/// Named heuristic family: "manhattan", "euclidean" or "chebyshev".
inline HeuristicSpec<GridState> named_heuristic(std::string_view name, const Grid2D& domain, GridState goal) {
  const Cost scale = domain.grid().min_cost();
  if (name == "manhattan") return {0, [goal, scale](const GridState& s) { return manhattan(s, goal, scale); }, "manhattan"};
  if (name == "euclidean") return {0, [goal, scale](const GridState& s) { return euclidean(s, goal, scale); }, "euclidean"};
  if (name == "chebyshev") return {0, [goal, scale](const GridState& s) { return chebyshev(s, goal, scale); }, "chebyshev"};
  throw ContractViolation("unknown grid heuristic '" + std::string(name) + "'");
}

/// Family list with the consistent anchor first, followed by `extra` names.
inline std::vector<HeuristicSpec<GridState>> heuristic_families(const Grid2D& domain, GridState goal,
                                                                const std::vector<std::string>& extra = {}) {
  std::vector<HeuristicSpec<GridState>> fams{anchor_heuristic(domain, goal)};
  for (const auto& n : extra) fams.push_back(named_heuristic(n, domain, goal));
  return fams;
}

}  // namespace amra::grid2d
