#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "amra/bench/oracle.hpp"
#include "amra/core/planner.hpp"
#include "amra/core/presets.hpp"
#include "amra/grid2d/generators.hpp"
#include "amra/grid2d/grid.hpp"
#include "amra/grid2d/heuristics.hpp"
#include "support/explicit_graph.hpp"
#include "support/reference_astar.hpp"

namespace amra {
namespace {

using testing::ExplicitGraph;
using grid2d::CostGrid;
using grid2d::Grid2D;
using grid2d::GridState;

HeuristicSpec<int> table_h(int res, std::map<int, Cost> values) {
  return {res, [values](int s) {
            auto it = values.find(s);
            return it == values.end() ? 0.0 : it->second;
          },
          "table"};
}

HeuristicSpec<int> zero_h(int res) { return table_h(res, {}); }

GoalTest<int> is_state(int g) {
  return [g](int s) { return s == g; };
}

// --- key ----------------------------------------------------------------------

TEST(Key, StartAtGoalIsZero) {
  ExplicitGraph g(1);
  AmraPlanner<ExplicitGraph> p(g, {zero_h(0)});
  p.initialize(0, is_state(0));
  p.set_weights(1, 1);
  EXPECT_EQ(p.key(*p.find(0), 0), 0.0);
}

TEST(Key, IsGPlusWeightedHeuristic) {
  ExplicitGraph g(1);
  g.add_edge(0, 1, 5, 1);
  g.add_edge(0, 2, 7, 1);
  AmraPlanner<ExplicitGraph> p(g, {table_h(0, {{1, 3}})});
  p.initialize(0, is_state(99));
  p.set_weights(2, 1);
  p.begin_iteration();
  p.expand(*p.find(0), 0);
  EXPECT_EQ(p.key(*p.find(1), 0), 11.0);
  p.set_weights(1, 1);
  EXPECT_EQ(p.key(*p.find(2), 0), 7.0);  // h vanishes at the goal-like state
}

TEST(Key, UndiscoveredStateIsRejected) {
  ExplicitGraph g(1);
  AmraPlanner<ExplicitGraph> p(g, {zero_h(0)});
  p.initialize(0, is_state(0));
  EXPECT_THROW((void)p.key(42, 0), ContractViolation);
}

// --- expand -------------------------------------------------------------------

TEST(Expand, FirstDiscoveryEntersAnchorAndEligibleQueues) {
  ExplicitGraph g(2);
  g.add_state(0, resolution_bit(1) | resolution_bit(2));
  g.add_state(1, resolution_bit(1));
  g.add_edge(0, 1, 4, 1);
  AmraPlanner<ExplicitGraph> p(g, {zero_h(0), zero_h(1), zero_h(2)});
  p.initialize(0, is_state(99));
  p.set_weights(1, 1);
  p.begin_iteration();
  p.expand(*p.find(0), 0);
  const NodeId x = *p.find(1);
  EXPECT_EQ(p.node(x).g, 4.0);
  EXPECT_EQ(p.node(x).bp, *p.find(0));
  EXPECT_TRUE(p.queue(0).contains(x));
  EXPECT_TRUE(p.queue(1).contains(x));
  EXPECT_FALSE(p.queue(2).contains(x));  // state 1 is not on resolution 2
}

TEST(Expand, ImprovedAnchorClosedStateGoesToIncons) {
  // 0 -> 1 (10), 0 -> 2 (1), 2 -> 1 (1), 2 -> 3 (1). h pulls state 1 ahead of 2.
  ExplicitGraph g(1);
  g.add_edge(0, 1, 10, 1);
  g.add_edge(0, 2, 1, 1);
  g.add_edge(2, 1, 1, 1);
  g.add_edge(2, 3, 1, 1);
  AmraPlanner<ExplicitGraph> p(g, {table_h(0, {{2, 100}})}, PlannerConfig{1, 1});
  p.initialize(0, is_state(3));
  p.set_weights(1, 1);
  p.begin_iteration();
  ASSERT_EQ(p.improve_path(), ImproveResult::kFound);
  const NodeId one = *p.find(1);
  EXPECT_EQ(p.node(one).g, 2.0);
  EXPECT_TRUE(has_resolution(p.node(one).closed, 0));
  ASSERT_EQ(p.incons().size(), 1U);
  EXPECT_EQ(p.incons()[0], one);
  EXPECT_FALSE(p.queue(0).contains(one));
}

TEST(Expand, BoundFilterKeepsStateOutOfInadmissibleQueue) {
  ExplicitGraph g(1);
  g.add_edge(0, 1, 2, 1);
  for (double w2 : {1.5, 2.0}) {
    AmraPlanner<ExplicitGraph> p(g, {table_h(0, {{1, 4}}), table_h(1, {{1, 8}})});
    p.initialize(0, is_state(99));
    p.set_weights(1, w2);
    p.begin_iteration();
    p.expand(*p.find(0), 0);
    const NodeId x = *p.find(1);
    EXPECT_EQ(p.key(x, 0), 6.0);
    EXPECT_EQ(p.key(x, 1), 10.0);
    EXPECT_TRUE(p.queue(0).contains(x));
    EXPECT_EQ(p.queue(1).contains(x), w2 == 2.0);  // 10 > 1.5 * 6, 10 <= 2 * 6
  }
}

TEST(Expand, InadmissibleExpansionRemovesStateFromSameResolutionQueues) {
  ExplicitGraph g(1);
  g.add_edge(0, 1, 1, 1);
  AmraPlanner<ExplicitGraph> p(g, {zero_h(0), zero_h(1), zero_h(1)});
  p.initialize(0, is_state(99));
  p.set_weights(1, 1);
  p.begin_iteration();
  const NodeId s = *p.find(0);
  ASSERT_TRUE(p.queue(1).contains(s));
  ASSERT_TRUE(p.queue(2).contains(s));
  p.expand(s, 1);
  EXPECT_FALSE(p.queue(2).contains(s));
  EXPECT_TRUE(p.queue(0).contains(s));  // the anchor keeps it
}

// --- choose_queue ---------------------------------------------------------------

TEST(ChooseQueue, RoundRobinOverNonEmptyQueues) {
  ExplicitGraph g(1);
  AmraPlanner<ExplicitGraph> p(g, {zero_h(0), zero_h(1), zero_h(1), zero_h(1)});
  p.initialize(0, is_state(99));
  p.set_weights(1, 1);
  p.begin_iteration();
  EXPECT_EQ(p.choose_queue(), 1);
  EXPECT_EQ(p.choose_queue(), 2);
  EXPECT_EQ(p.choose_queue(), 3);
  EXPECT_EQ(p.choose_queue(), 1);
}

TEST(ChooseQueue, SkipsEmptyQueue) {
  ExplicitGraph g(1);
  // queue 2's key (0 + 50) exceeds w2 * anchor key (0), so it is never seeded
  AmraPlanner<ExplicitGraph> p(g, {zero_h(0), zero_h(1), table_h(1, {{0, 50}}), zero_h(1)});
  p.initialize(0, is_state(99));
  p.set_weights(1, 1);
  p.begin_iteration();
  ASSERT_TRUE(p.queue(2).empty());
  std::vector<int> seq;
  for (int k = 0; k < 4; ++k) seq.push_back(p.choose_queue());
  EXPECT_EQ(seq, (std::vector<int>{1, 3, 1, 3}));
}

TEST(ChooseQueue, SingleQueueAndAnchorOnly) {
  ExplicitGraph g(1);
  AmraPlanner<ExplicitGraph> one(g, {zero_h(0), zero_h(1)});
  one.initialize(0, is_state(99));
  one.set_weights(1, 1);
  one.begin_iteration();
  for (int k = 0; k < 3; ++k) EXPECT_EQ(one.choose_queue(), 1);

  AmraPlanner<ExplicitGraph> anchor_only(g, {zero_h(0)});
  anchor_only.initialize(0, is_state(99));
  anchor_only.set_weights(1, 1);
  anchor_only.begin_iteration();
  EXPECT_EQ(anchor_only.choose_queue(), 0);
}

// --- update_weights -------------------------------------------------------------

TEST(WeightSchedule, DefaultDecay) {
  WeightSchedule s;
  EXPECT_EQ(s.next(3, 2), std::make_pair(1.5, 1.0));
  EXPECT_EQ(s.next(1.5, 1), std::make_pair(1.0, 1.0));
  EXPECT_EQ(s.next(1, 1), std::make_pair(1.0, 1.0));
  EXPECT_THROW((void)s.next(0.5, 1), ContractViolation);
}

TEST(WeightSchedule, ReachesOneInFinitelyManyStepsAndNeverIncreases) {
  for (double decay : {0.3, 0.5, 0.9, 0.99}) {
    WeightSchedule s{decay};
    double w1 = 50, w2 = 7;
    int steps = 0;
    while (!(w1 == 1 && w2 == 1)) {
      auto [n1, n2] = s.next(w1, w2);
      ASSERT_LE(n1, w1);
      ASSERT_LE(n2, w2);
      ASSERT_GE(n1, 1);
      ASSERT_GE(n2, 1);
      w1 = n1;
      w2 = n2;
      ASSERT_LT(++steps, 10000);
    }
  }
}

// --- improve_path / plan on explicit graphs -------------------------------------

TEST(ImprovePath, EmptyAnchorIsExhausted) {
  ExplicitGraph g(1);
  AmraPlanner<ExplicitGraph> p(g, {zero_h(0)});
  p.initialize(0, is_state(1));
  p.set_weights(1, 1);
  EXPECT_EQ(p.improve_path(), ImproveResult::kExhausted);  // INCONS not merged yet
}

TEST(ImprovePath, StartIsGoal) {
  ExplicitGraph g(1);
  g.add_edge(0, 1, 1, 1);
  AmraPlanner<ExplicitGraph> p(g, {zero_h(0), zero_h(1)});
  auto res = p.plan(0, is_state(0));
  ASSERT_TRUE(res.solved());
  EXPECT_EQ(res.solutions.front().path.size(), 1U);
  EXPECT_EQ(res.solutions.front().cost, 0.0);
}

TEST(Plan, RejectsBadConfigurations) {
  ExplicitGraph g(2);
  EXPECT_THROW(AmraPlanner<ExplicitGraph>(g, {zero_h(1)}), ContractViolation);
  EXPECT_THROW(AmraPlanner<ExplicitGraph>(g, {zero_h(0), zero_h(1)}), ContractViolation);  // res 2 uncovered
  EXPECT_THROW(AmraPlanner<ExplicitGraph>(g, {zero_h(0), zero_h(3)}), ContractViolation);
  PlannerConfig bad;
  bad.w1_init = 0.5;
  EXPECT_THROW(AmraPlanner<ExplicitGraph>(g, {zero_h(0)}, bad), ContractViolation);
}

TEST(Plan, TimeBudgetKeepsEarlierSolution) {
  CostGrid grid(200, 200);
  Grid2D d(grid, 4, {1});
  const GridState goal{199, 199};
  PlannerConfig cfg;
  cfg.expansion_budget = 50;
  AmraPlanner<Grid2D> p(d, {grid2d::anchor_heuristic(d, goal)}, cfg);
  auto res = p.plan({0, 0}, [goal](const GridState& s) { return s == goal; });
  EXPECT_EQ(res.status, PlanStatus::kBudgetExhausted);
  EXPECT_FALSE(res.solved());
}

// --- grid-based behaviour ---------------------------------------------------------

// Every simple path on a tiny grid, costed independently of Grid2D.
Cost brute_force_min_cost(const CostGrid& g, GridState s, GridState t, bool eight) {
  Cost best = kInfinity;
  std::set<std::pair<int, int>> visited{{s.x, s.y}};
  std::function<void(int, int, Cost)> dfs = [&](int x, int y, Cost c) {
    if (x == t.x && y == t.y) {
      best = std::min(best, c);
      return;
    }
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        if ((dx == 0 && dy == 0) || (!eight && dx != 0 && dy != 0)) continue;
        const int nx = x + dx, ny = y + dy;
        if (!g.passable(nx, ny) || visited.count({nx, ny})) continue;
        if (dx != 0 && dy != 0 && (!g.passable(x + dx, y) || !g.passable(x, y + dy))) continue;
        visited.insert({nx, ny});
        dfs(nx, ny, c + g.at(nx, ny));
        visited.erase({nx, ny});
      }
    }
  };
  dfs(s.x, s.y, 0);
  return best;
}

TEST(ImprovePath, ThreeByThreeDiagonal) {
  CostGrid grid(3, 3);
  Grid2D d(grid, 8, {1});
  const GridState goal{2, 2};
  const Cost oracle = brute_force_min_cost(grid, {0, 0}, goal, true);
  ASSERT_EQ(oracle, 2.0);  // two diagonal steps of one cell each
  auto inadmissible = grid2d::anchor_heuristic(d, goal);
  inadmissible.res = 1;
  AmraPlanner<Grid2D> p(d, {grid2d::anchor_heuristic(d, goal), inadmissible}, PlannerConfig{1, 1});
  p.initialize({0, 0}, [goal](const GridState& s) { return s == goal; });
  p.set_weights(1, 1);
  p.begin_iteration();
  ASSERT_EQ(p.improve_path(), ImproveResult::kFound);
  EXPECT_EQ(p.trace(p.goal_node()).cost, oracle);
  EXPECT_LE(p.stats().expansions_iteration, 9U * 2U);
  EXPECT_LE(p.stats().expansions_per_queue[1], 9U);
}

TEST(ImprovePath, BruteForceAgreesOnSmallRandomGrids) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    CostGrid grid = grid2d::random_map(4, 4, seed, 0.2, 1, 9);
    grid.set(0, 0, 1);
    grid.set(3, 3, 1);
    for (bool eight : {false, true}) {
      Grid2D d(grid, eight ? 8 : 4, {1, 3});
      const GridState goal{3, 3};
      const Cost oracle = brute_force_min_cost(grid, {0, 0}, goal, eight);
      const auto from_dijkstra = bench::oracle_opt<Grid2D>(d, {0, 0}, [goal](const GridState& s) { return s == goal; });
      ASSERT_TRUE(from_dijkstra.has_value());
      // the union graph adds 3-cell moves, which never beat their 1-cell expansion
      EXPECT_EQ(*from_dijkstra, oracle) << "seed " << seed;
    }
  }
}

TEST(Plan, EnclosedGoalFailsAfterBoundedExpansions) {
  CostGrid grid = grid2d::random_map(30, 30, 5, 0.1, 1, 5);
  const GridState goal{18, 18};
  grid2d::wall_in(grid, goal, 2);
  grid.set(goal.x, goal.y, 1);
  grid.set(0, 0, 1);
  Grid2D d(grid, 8, {1, 3, 9});
  const auto fams = grid2d::heuristic_families(d, goal, {"euclidean"});
  const auto preset = make_preset(PresetKind::kAMRAStar, {3, 2});
  AmraPlanner<Grid2D> p(d, build_heuristics(preset, fams));
  auto res = p.plan({0, 0}, [goal](const GridState& s) { return s == goal; });
  EXPECT_EQ(res.status, PlanStatus::kNoPath);
  EXPECT_FALSE(res.solved());
  const auto reachable = bench::reachable_count(d, GridState{0, 0});
  EXPECT_GE(res.stats.expansions_total, reachable);
  EXPECT_LE(res.stats.expansions_total, reachable * 4);  // N + 1 = 4
}

TEST(Plan, IllustrativeFixtureConvergesToOptimum) {
  const auto fx = grid2d::illustrative_fixture();
  Grid2D d(fx.grid, 8, {1, 3, 9});
  const auto goal = fx.goal;
  GoalTest<GridState> is_goal = [goal](const GridState& s) { return s == goal; };
  const auto fams = grid2d::heuristic_families(d, goal, {"euclidean"});
  const auto preset = make_preset(PresetKind::kAMRAStar, {3, 2});
  AmraPlanner<Grid2D> p(d, build_heuristics(preset, fams));
  auto res = p.plan(fx.start, is_goal);
  ASSERT_TRUE(res.solved());
  const auto opt = bench::oracle_opt(d, fx.start, is_goal);
  ASSERT_TRUE(opt.has_value());
  EXPECT_EQ(res.best().cost, *opt);
  EXPECT_EQ(res.best().bound, 1.0);
  for (const auto& s : res.solutions) EXPECT_LE(s.cost, s.bound * *opt);
}

// Structural invariants checked after every expansion on random instances.
TEST(Plan, InvariantsHoldThroughoutRandomRuns) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    CostGrid grid = grid2d::noisy_obstacle_map(40, 40, seed, 1, 20, 0.15);
    const GridState start{0, 0}, goal{36, 36};
    grid.set(start.x, start.y, 3);
    grid.set(goal.x, goal.y, 3);
    Grid2D d(grid, seed % 2 ? 8 : 4, {1, 4, 12});
    const auto fams = grid2d::heuristic_families(d, goal, {"euclidean"});
    const auto preset = make_preset(PresetKind::kAMRAStar, {3, 2});
    AmraPlanner<Grid2D> p(d, build_heuristics(preset, fams));

    std::vector<Cost> last_g;
    Cost last_anchor_key = -1;
    int failures = 0;
    p.set_expansion_observer([&](const AmraPlanner<Grid2D>& pl, const AmraPlanner<Grid2D>::ExpansionEvent& ev) {
      if (auto why = pl.check_queue_invariants()) {
        if (failures++ == 0) ADD_FAILURE() << *why;
      }
      // g never increases over the run
      last_g.resize(pl.num_nodes(), kInfinity);
      for (NodeId v = 0; v < pl.num_nodes(); ++v) {
        if (pl.node(v).g > last_g[v] && failures++ == 0) ADD_FAILURE() << "g increased";
        last_g[v] = pl.node(v).g;
      }
      // anchor pops are monotone within an iteration once w1 = 1
      if (pl.stats().expansions_iteration == 1) last_anchor_key = -1;
      if (ev.queue == 0 && pl.w1() == 1.0) {
        if (ev.key < last_anchor_key && failures++ == 0) ADD_FAILURE() << "anchor key decreased";
        last_anchor_key = ev.key;
      }
      EXPECT_LE(pl.stats().max_expansions_of_any_state, 4U);
    });
    auto res = p.plan(start, [goal](const GridState& s) { return s == goal; });
    ASSERT_EQ(failures, 0) << "seed " << seed;
    if (!res.solved()) continue;

    // backpointer chains are acyclic with strictly decreasing g
    for (NodeId v = 0; v < p.num_nodes(); ++v) {
      std::size_t steps = 0;
      for (NodeId u = v; p.node(u).bp != SearchNode::kNoNode; u = p.node(u).bp) {
        const auto& n = p.node(u);
        ASSERT_GT(n.g, p.node(n.bp).g);
        ASSERT_GE(n.g, p.node(n.bp).g + n.bp_cost);
        ASSERT_LT(++steps, p.num_nodes());
      }
    }
    for (const auto& sol : res.solutions) {
      Cost sum = 0;
      for (std::size_t k = 1; k < sol.path.size(); ++k) {
        const Cost c = d.action_cost(sol.path[k - 1].state, sol.path[k].state);
        ASSERT_NE(c, kInfinity);
        sum += c;
      }
      EXPECT_EQ(sum, sol.cost);
      EXPECT_EQ(sol.path.front().state, start);
      EXPECT_EQ(sol.path.back().state, goal);
    }
  }
}

// --- presets / devolution -----------------------------------------------------------

TEST(Presets, Layouts) {
  const auto amra = make_preset(PresetKind::kAMRAStar, {3, 2});
  EXPECT_EQ(amra.resolutions, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(amra.heuristics.size(), 7U);
  EXPECT_TRUE(amra.anytime);

  const auto mra = make_preset(PresetKind::kMRAStar, {3, 2, 1, 1});
  EXPECT_EQ(mra.heuristics.size(), 4U);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(mra.heuristics[i].family, 1);
  EXPECT_FALSE(mra.anytime);

  const auto ara = make_preset(PresetKind::kARAStar, {3, 1, 3});
  EXPECT_EQ(ara.resolutions, (std::vector<int>{3}));
  EXPECT_EQ(ara.heuristics.size(), 1U);
  EXPECT_TRUE(ara.anytime);
  EXPECT_FALSE(make_preset(PresetKind::kWeightedAStar, {1, 1}).anytime);

  const auto amha = make_preset(PresetKind::kAnytimeMHAStar, {2, 3, 1});
  EXPECT_EQ(amha.resolutions, (std::vector<int>{1}));
  EXPECT_EQ(amha.heuristics.size(), 4U);
  EXPECT_FALSE(make_preset(PresetKind::kMHAStar, {2, 3, 1}).anytime);

  EXPECT_EQ(parse_preset_kind("amra"), PresetKind::kAMRAStar);
  EXPECT_FALSE(parse_preset_kind("rrt").has_value());
}

TEST(Presets, WeightedAStarMatchesReferencePopSequence) {
  for (std::uint64_t seed = 100; seed < 115; ++seed) {
    CostGrid grid = grid2d::random_map(16, 16, seed, 0.2, 1, 9);
    const GridState start{0, 0}, goal{15, 15};
    grid.set(0, 0, 1);
    grid.set(15, 15, 1);
    Grid2D d(grid, 8, {1});
    const auto h = grid2d::anchor_heuristic(d, goal);
    GoalTest<GridState> is_goal = [goal](const GridState& s) { return s == goal; };
    for (double w : {1.0, 2.5}) {
      const auto preset = make_preset(PresetKind::kWeightedAStar, {1, 1});
      AmraPlanner<Grid2D> p(d, build_heuristics(preset, std::vector{h}), preset.apply({w, 1}));
      std::vector<GridState> pops;
      p.set_expansion_observer([&](const auto& pl, const auto& ev) { pops.push_back(pl.state(ev.node)); });
      auto res = p.plan(start, is_goal);
      const auto ref = testing::ReferenceWeightedAStar<Grid2D>::run(d, start, is_goal, h.evaluate, w);
      EXPECT_EQ(pops, ref.pops) << "seed " << seed << " w " << w;
      EXPECT_EQ(res.solved(), ref.cost != kInfinity);
      if (res.solved()) EXPECT_LE(res.best().cost, ref.cost);
    }
  }
}

TEST(Presets, ResolutionSubsetRenumbers) {
  CostGrid grid(30, 30);
  Grid2D d(grid, 4, {1, 3, 9});
  ResolutionSubset<Grid2D> low(d, {3});
  EXPECT_EQ(low.num_resolutions(), 1);
  EXPECT_EQ(low.resolutions_of({9, 18}), resolution_bit(1));
  EXPECT_EQ(low.resolutions_of({3, 3}), 0U);
  std::vector<Edge<GridState>> out;
  low.successors({9, 9}, 1, out);
  ASSERT_EQ(out.size(), 4U);
  EXPECT_EQ(out[0].to, (GridState{18, 9}));
  EXPECT_THROW(ResolutionSubset<Grid2D>(d, {4}), ContractViolation);
}

}  // namespace
}  // namespace amra
