#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "amra/core/random.hpp"
#include "amra/grid2d/grid.hpp"
#include "amra/uav4d/domain.hpp"

namespace amra::bench {

template <typename State>
struct Problem {
  State start;
  State goal;
};

/// n distinct ordered (start, goal) pairs drawn uniformly without replacement
/// from `candidates`, start != goal. Deterministic under `seed`.
template <typename State>
std::vector<Problem<State>> sample_pairs(const std::vector<State>& candidates, std::size_t n, std::uint64_t seed) {
  const std::size_t m = candidates.size();
  if (m < 2) throw std::invalid_argument("need at least two free coarse states, found " + std::to_string(m));
  if (n > m * (m - 1)) throw std::invalid_argument("asked for " + std::to_string(n) + " pairs from " + std::to_string(m) + " states");
  Rng rng(seed);
  std::set<std::pair<std::size_t, std::size_t>> used;
  std::vector<Problem<State>> out;
  while (out.size() < n) {
    const auto a = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(m) - 1));
    const auto b = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(m) - 2));
    const std::size_t g = b >= a ? b + 1 : b;  // uniform over the other m-1 states
    if (!used.emplace(a, g).second) continue;
    out.push_back({candidates[a], candidates[g]});
  }
  return out;
}

/// Free cells on the coarsest lattice of a grid domain.
inline std::vector<grid2d::GridState> coarse_free_states(const grid2d::Grid2D& d) {
  const int f = d.factors().back();
  std::vector<grid2d::GridState> out;
  for (int y = 0; y < d.grid().height(); y += f)
    for (int x = 0; x < d.grid().width(); x += f)
      if (d.valid({x, y})) out.push_back({x, y});
  return out;
}

inline std::vector<Problem<grid2d::GridState>> sample_problems(const grid2d::Grid2D& d, std::size_t n,
                                                                std::uint64_t seed) {
  return sample_pairs(coarse_free_states(d), n, seed);
}

/// UAV problems: free low-resolution positions, resting, with headings drawn
/// from the same seed.
inline std::vector<Problem<uav4d::UavState>> sample_problems(const uav4d::Uav4D& d, std::size_t n,
                                                              std::uint64_t seed) {
  const int step = uav4d::kStepCells[uav4d::kLow];
  std::vector<uav4d::UavState> cells;
  for (int y = 0; y < d.occupancy().height(); y += step)
    for (int x = 0; x < d.occupancy().width(); x += step)
      if (d.occupancy().free(x, y)) cells.push_back({x, y, 0, 0});
  auto pairs = sample_pairs(cells, n, seed);
  Rng rng(seed ^ 0x5bd1e995ULL);
  for (auto& p : pairs) {
    p.start.theta = static_cast<int>(rng.uniform_int(0, uav4d::kHeadings - 1));
    p.goal.theta = static_cast<int>(rng.uniform_int(0, uav4d::kHeadings - 1));
  }
  return pairs;
}

}  // namespace amra::bench
