#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "amra/core/domain.hpp"
#include "amra/core/types.hpp"

namespace amra::bench {

inline constexpr std::size_t kOracleStateLimit = 10'000'000;

/// Exact least cost from `start` to any goal over the union graph G_0, by
/// heap-based Dijkstra with no heuristic. kInfinity when no goal is reachable;
/// nullopt when more than `limit` states would have to be settled.
template <SearchDomain D>
std::optional<Cost> oracle_opt(const D& domain, const typename D::State& start,
                               const GoalTest<typename D::State>& goal, std::size_t limit = kOracleStateLimit) {
  using State = typename D::State;
  struct Item {
    Cost g;
    State s;
    bool operator>(const Item& o) const { return g > o.g; }
  };
  std::unordered_map<State, Cost> best;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  std::vector<Edge<State>> succ;
  best.emplace(start, 0);
  heap.push({0, start});
  std::size_t settled = 0;
  while (!heap.empty()) {
    const Item top = heap.top();
    heap.pop();
    if (top.g > best[top.s]) continue;
    if (goal(top.s)) return top.g;
    if (++settled > limit) return std::nullopt;
    succ.clear();
    union_successors(domain, top.s, succ);
    for (const auto& e : succ) {
      const Cost ng = top.g + e.cost;
      auto [it, fresh] = best.try_emplace(e.to, ng);
      if (fresh || ng < it->second) {
        it->second = ng;
        heap.push({ng, e.to});
      }
    }
  }
  return kInfinity;
}

/// Set of states reachable from `start` in G_0 (plain BFS).
template <SearchDomain D>
std::size_t reachable_count(const D& domain, const typename D::State& start) {
  using State = typename D::State;
  std::unordered_map<State, bool> seen{{start, true}};
  std::vector<State> stack{start};
  std::vector<Edge<State>> succ;
  while (!stack.empty()) {
    const State s = stack.back();
    stack.pop_back();
    succ.clear();
    union_successors(domain, s, succ);
    for (const auto& e : succ) {
      if (seen.emplace(e.to, true).second) stack.push_back(e.to);
    }
  }
  return seen.size();
}

}  // namespace amra::bench
