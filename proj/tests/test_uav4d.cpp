#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "amra/bench/oracle.hpp"
#include "amra/core/planner.hpp"
#include "amra/core/random.hpp"
#include "amra/grid2d/generators.hpp"
#include "amra/uav4d/domain.hpp"
#include "amra/uav4d/generator.hpp"
#include "amra/uav4d/heuristics.hpp"
#include "amra/uav4d/primitives.hpp"

namespace amra::uav4d {
namespace {

const PrimitiveSet& shipped() {
  static const PrimitiveSet set = load_primitives(std::string(AMRA_DATA_DIR) + "/uav_primitives.txt");
  return set;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// One straight 3 m primitive per heading at constant speed 3 m/s. Off-axis
// offsets are snapped to the nearest cell.
std::string cruise_file(double dur = 1.0, int res_m = 3, int scale = 1) {
  std::ostringstream os;
  os.precision(17);
  for (int k = 0; k < kHeadings; ++k) {
    const auto [x, y] = rotate_offset(1.0, 0.0, k);
    const int dx = static_cast<int>(std::lround(x)) * scale;
    const int dy = static_cast<int>(std::lround(y)) * scale;
    os << "prim res=" << res_m << " sθ=" << k << " sv=1 dx=" << dx << " dy=" << dy << " eθ=" << k
       << " ev=1 dur=" << dur << " nposes=2\n";
    os << "0 0 " << heading_angle(k) << " 0\n";
    os << dx * 3 << ' ' << dy * 3 << ' ' << heading_angle(k) << ' ' << dur << '\n';
  }
  return os.str();
}

int load_error_line(const std::string& text) {
  try {
    (void)parse_primitives(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

// --- primitive files -------------------------------------------------------------

TEST(Primitives, CruisePrimitiveDurationIsDistanceOverSpeed) {
  const auto set = parse_primitives(cruise_file());
  ASSERT_EQ(set.size(), 12U);
  const auto& p = set.at(set.group(kHigh, 0, 1).front());
  EXPECT_EQ(p.dx, 1);
  EXPECT_EQ(p.dy, 0);
  EXPECT_EQ(p.duration, p.dx * kCellMetres / kVelocities[1]);
}

TEST(Primitives, MisalignedLowResolutionOffsetRejected) {
  EXPECT_EQ(load_error_line(cruise_file(1.0, 9, 1)), 1);
  EXPECT_NO_THROW((void)parse_primitives(cruise_file(3.0, 9, 3)));
}

TEST(Primitives, BadRecordsRejectedWithLines) {
  EXPECT_EQ(load_error_line(cruise_file(0.0)), 1);
  EXPECT_EQ(load_error_line(cruise_file(-1.0)), 1);
  std::string text = cruise_file();
  // swap the timestamps of the third record's poses
  auto lines = std::vector<std::string>{};
  std::istringstream ss(text);
  for (std::string l; std::getline(ss, l);) lines.push_back(l);
  lines[7] = lines[7].substr(0, lines[7].rfind(' ')) + " 0.5";
  lines[8] = lines[8].substr(0, lines[8].rfind(' ')) + " 0.25";
  std::string bad;
  for (const auto& l : lines) bad += l + '\n';
  EXPECT_EQ(load_error_line(bad), 7);
  EXPECT_EQ(load_error_line("prim res=4 sθ=0 sv=1 dx=1 dy=0 eθ=0 ev=1 dur=1 nposes=2\n"), 1);
  EXPECT_EQ(load_error_line("prim res=3 sθ=0 sv=1 dx=1 dy=0 eθ=0 ev=1 dur=1 nposes=3\n0 0 0 0\n3 0 0 1\n"), 3);
  EXPECT_EQ(load_error_line("prim res=3 theta=0 sv=1 dx=1 dy=0 eθ=0 ev=1 dur=1 nposes=2\n0 0 0\n3 0 0\n"), 1);
}

TEST(Primitives, LastPoseMustMatchOffset) {
  const std::string text = "prim res=3 sθ=0 sv=1 dx=1 dy=0 eθ=0 ev=1 dur=1 nposes=2\n0 0 0 0\n4 0 0 1\n";
  EXPECT_EQ(load_error_line(text), 1);
}

TEST(Primitives, ClosureRejectsMissingRotation) {
  std::string text = cruise_file();
  const auto cut = text.find("prim res=3 sθ=5");
  const auto end = text.find("prim", cut + 1);
  text.erase(cut, end - cut);
  try {
    (void)parse_primitives(text);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("closure"), std::string::npos);
  }
}

TEST(Primitives, ShippedSetIsClosedAndRegenerable) {
  const auto& set = shipped();
  EXPECT_FALSE(check_closure(set).has_value());
  for (const auto& p : set.primitives()) EXPECT_FALSE(check_primitive(p).has_value());
  for (int r : {kHigh, kLow})
    for (int t = 0; t < kHeadings; ++t)
      for (int v = 0; v < kNumVelocities; ++v) EXPECT_FALSE(set.group(r, t, v).empty()) << r << ' ' << t << ' ' << v;

  std::ostringstream a;
  std::ostringstream b;
  write_primitives(a, generate_primitives());
  write_primitives(b, generate_primitives());
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str(), read_file(std::string(AMRA_DATA_DIR) + "/uav_primitives.txt"));
}

// Rotating any shipped primitive by one heading step lands within a snapped
// cell of a primitive from the rotated group.
TEST(Primitives, OneStepRotationReproducesAPrimitive) {
  const auto& set = shipped();
  for (const auto& p : set.primitives()) {
    const auto [rx, ry] = rotate_offset(p.dx * kCellMetres, p.dy * kCellMetres, 1);
    double best = kInfinity;
    for (int id : set.group(p.res, (p.start_theta + 1) % kHeadings, p.start_v)) {
      const auto& q = set.at(id);
      if (q.end_theta != (p.end_theta + 1) % kHeadings || q.end_v != p.end_v) continue;
      best = std::min(best, std::hypot(q.dx * kCellMetres - rx, q.dy * kCellMetres - ry));
    }
    EXPECT_LE(best, std::sqrt(2.0) * kStepCells[static_cast<std::size_t>(p.res)] * kCellMetres + 1e-9);
  }
}

// Speeds implied by the sampled poses never exceed the top speed, so every
// duration is at least the chord over 8 m/s.
TEST(Primitives, NoFasterThanTopSpeed) {
  for (const auto& p : shipped().primitives()) {
    EXPECT_GE(p.duration * kMaxSpeed + 1e-9, std::hypot(p.dx, p.dy) * kCellMetres);
    for (std::size_t i = 1; i < p.swept.size(); ++i) {
      const auto& a = p.swept[i - 1];
      const auto& b = p.swept[i];
      EXPECT_LE(std::hypot(b.x - a.x, b.y - a.y), kMaxSpeed * (b.t - a.t) + 1e-6);
    }
  }
}

// --- domain ---------------------------------------------------------------------

TEST(Uav4D, ResolutionsOf) {
  grid2d::CostGrid map(20, 20);
  Uav4D d(map, shipped());
  const auto both = resolution_bit(kHigh) | resolution_bit(kLow);
  EXPECT_EQ(d.resolutions_of({0, 0, 0, 0}), both);
  EXPECT_EQ(d.resolutions_of({1, 0, 5, 2}), resolution_bit(kHigh));
  EXPECT_EQ(d.resolutions_of({3, 3, 0, 1}), both);
}

TEST(Uav4D, FastStateFacingWallHasNoSuccessors) {
  grid2d::CostGrid map(30, 30);
  grid2d::fill_rect(map, 11, 0, 11, 29, grid2d::CostGrid::kObstacle);
  Uav4D d(map, shipped());
  std::vector<Edge<UavState>> out;
  const UavState s{10, 10, 0, 2};
  for (int id : shipped().group(kHigh, 0, 2)) EXPECT_EQ(shipped().at(id).dy, 0);  // straight only
  d.successors(s, kHigh, out);
  EXPECT_TRUE(out.empty());
}

TEST(Uav4D, RestingStateUsesRestGroup) {
  grid2d::CostGrid map(30, 30);
  Uav4D d(map, shipped());
  std::vector<Edge<UavState>> out;
  d.successors({15, 15, 4, 0}, kHigh, out);
  ASSERT_FALSE(out.empty());
  int in_place = 0;
  for (const auto& e : out) {
    const auto& p = shipped().at(e.action);
    EXPECT_EQ(p.start_v, 0);
    EXPECT_EQ(p.start_theta, 4);
    if (p.dx == 0 && p.dy == 0) ++in_place;
  }
  EXPECT_EQ(in_place, 2);
}

TEST(Uav4D, EmptyMapSuccessorCountMatchesGroup) {
  grid2d::CostGrid map(60, 60);
  Uav4D d(map, shipped());
  std::vector<Edge<UavState>> out;
  for (int r : {kHigh, kLow})
    for (int t = 0; t < kHeadings; ++t)
      for (int v = 0; v < kNumVelocities; ++v) {
        out.clear();
        d.successors({30, 30, t, v}, r, out);
        EXPECT_EQ(out.size(), shipped().group(r, t, v).size());
      }
  EXPECT_THROW(d.successors({31, 30, 0, 0}, kLow, out), ContractViolation);
}

TEST(Uav4D, TranslationInvariantOnEmptyMap) {
  grid2d::CostGrid map(80, 80);
  Uav4D d(map, shipped());
  Rng rng(5);
  std::vector<Edge<UavState>> a;
  std::vector<Edge<UavState>> b;
  for (int k = 0; k < 200; ++k) {
    const UavState s{3 * static_cast<int>(rng.uniform_int(5, 8)), 3 * static_cast<int>(rng.uniform_int(5, 8)),
                     static_cast<int>(rng.uniform_int(0, 11)), static_cast<int>(rng.uniform_int(0, 2))};
    const int tx = 3 * static_cast<int>(rng.uniform_int(-3, 3));
    const int ty = 3 * static_cast<int>(rng.uniform_int(-3, 3));
    for (int r : {kHigh, kLow}) {
      a.clear();
      b.clear();
      d.successors(s, r, a);
      d.successors({s.x + tx, s.y + ty, s.theta, s.v}, r, b);
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(b[i].to, (UavState{a[i].to.x + tx, a[i].to.y + ty, a[i].to.theta, a[i].to.v}));
        EXPECT_EQ(b[i].cost, a[i].cost);
        EXPECT_EQ(b[i].action, a[i].action);
      }
    }
  }
}

TEST(Uav4D, InflationGrowsObstacles) {
  grid2d::CostGrid map(10, 10);
  map.set(5, 5, grid2d::CostGrid::kObstacle);
  Uav4D bare(map, shipped(), 0);
  Uav4D grown(map, shipped(), 3.0);
  EXPECT_TRUE(bare.valid({6, 5, 0, 0}));
  EXPECT_FALSE(grown.valid({6, 5, 0, 0}));
  EXPECT_TRUE(grown.valid({6, 6, 0, 0}));  // 4.24 m away
  EXPECT_FALSE(grown.valid({5, 5, 0, 0}));
}

// --- Dubins -----------------------------------------------------------------------

// Independent check: parametrise each word by its first two segment lengths,
// derive the third from the heading constraint, scan a dense grid for small
// endpoint residuals and polish with Newton steps.
struct DubinsOracle {
  Pose a;
  Pose b;
  double rho;

  // Segment kinds: +1 left arc, -1 right arc, 0 straight.
  [[nodiscard]] Pose apply(Pose p, int kind, double len) const {
    if (kind == 0) return {p.x + len * std::cos(p.theta), p.y + len * std::sin(p.theta), p.theta};
    const double ang = len / rho;
    const double cx = p.x - kind * rho * std::sin(p.theta);
    const double cy = p.y + kind * rho * std::cos(p.theta);
    const double th = p.theta + kind * ang;
    return {cx + kind * rho * std::sin(th), cy - kind * rho * std::cos(th), th};
  }

  // Returns the residual for segment lengths (s1, s2) and writes s3.
  [[nodiscard]] std::array<double, 2> residual(const std::array<int, 3>& w, double s1, double s2, double& s3) const {
    Pose p = apply(a, w[0], s1);
    p = apply(p, w[1], s2);
    const double turn = wrap_angle(w[2] * (b.theta - p.theta));
    s3 = turn * rho;
    p = apply(p, w[2], s3);
    return {p.x - b.x, p.y - b.y};
  }

  [[nodiscard]] double solve() const {
    const std::array<std::array<int, 3>, 6> words{{{1, 0, 1}, {-1, 0, -1}, {1, 0, -1}, {-1, 0, 1}, {-1, 1, -1}, {1, -1, 1}}};
    const double span = std::hypot(b.x - a.x, b.y - a.y) + 4 * rho;
    double best = kInfinity;
    constexpr int kGrid = 600;
    for (const auto& w : words) {
      const double max1 = 2 * std::numbers::pi * rho;
      const double max2 = w[1] == 0 ? span : 2 * std::numbers::pi * rho;
      std::vector<std::pair<double, std::pair<double, double>>> seeds;
      for (int i = 0; i < kGrid; ++i) {
        for (int j = 0; j < kGrid; ++j) {
          const double s1 = max1 * i / kGrid;
          const double s2 = max2 * j / kGrid;
          double s3 = 0;
          const auto r = residual(w, s1, s2, s3);
          seeds.push_back({std::hypot(r[0], r[1]), {s1, s2}});
        }
      }
      std::partial_sort(seeds.begin(), seeds.begin() + 40, seeds.end());
      for (int k = 0; k < 40; ++k) {
        double s1 = seeds[static_cast<std::size_t>(k)].second.first;
        double s2 = seeds[static_cast<std::size_t>(k)].second.second;
        double s3 = 0;
        for (int it = 0; it < 60; ++it) {
          const auto r = residual(w, s1, s2, s3);
          const double h = 1e-7;
          double t3 = 0;
          const auto r1 = residual(w, s1 + h, s2, t3);
          const auto r2 = residual(w, s1, s2 + h, t3);
          const double j11 = (r1[0] - r[0]) / h, j21 = (r1[1] - r[1]) / h;
          const double j12 = (r2[0] - r[0]) / h, j22 = (r2[1] - r[1]) / h;
          const double det = j11 * j22 - j12 * j21;
          if (std::abs(det) < 1e-14) break;
          s1 -= (j22 * r[0] - j12 * r[1]) / det;
          s2 -= (-j21 * r[0] + j11 * r[1]) / det;
        }
        if (s1 < -1e-9 || s2 < -1e-9) continue;
        if (s1 > max1 + 1e-9 || (w[1] != 0 && s2 > max1 + 1e-9)) continue;
        const auto r = residual(w, s1, s2, s3);
        if (std::hypot(r[0], r[1]) < 1e-8) best = std::min(best, s1 + s2 + s3);
      }
    }
    return best;
  }
};

TEST(Dubins, IdenticalPosesAreZero) {
  EXPECT_EQ(dubins_length({4, -2, 1.3}, {4, -2, 1.3}, 8), 0.0);
  EXPECT_EQ(dubins_distance({3, 3, 5, 1}, {3, 3, 5, 2}), 0.0);
}

TEST(Dubins, AlignedCollinearIsSeparation) {
  for (double th : {0.0, 0.7, 2.0, 4.4}) {
    const double d = 37.5;
    const Pose a{1, 2, th};
    const Pose b{1 + d * std::cos(th), 2 + d * std::sin(th), th};
    EXPECT_NEAR(dubins_length(a, b, 8), d, 1e-9 * d);
  }
  EXPECT_NEAR(dubins_distance({0, 0, 0, 0}, {10, 0, 0, 0}), 30.0 / 8, 1e-9);
}

TEST(Dubins, PerpendicularTenMetresMatchesOracle) {
  const Pose a{0, 0, 0};
  const Pose b{10, 0, std::numbers::pi / 2};
  const double oracle = DubinsOracle{a, b, 2}.solve();
  EXPECT_NEAR(dubins_length(a, b, 2), oracle, 1e-6);
}

TEST(Dubins, RandomPairsMatchOracle) {
  Rng rng(17);
  for (int k = 0; k < 12; ++k) {
    const Pose a{rng.uniform(-20, 20), rng.uniform(-20, 20), rng.uniform(0, 2 * std::numbers::pi)};
    const Pose b{rng.uniform(-20, 20), rng.uniform(-20, 20), rng.uniform(0, 2 * std::numbers::pi)};
    const double rho = rng.uniform(1, 8);
    const double oracle = DubinsOracle{a, b, rho}.solve();
    EXPECT_NEAR(dubins_length(a, b, rho), oracle, 1e-6 * std::max(1.0, oracle)) << k;
  }
}

TEST(Dubins, NeverShorterThanEuclidean) {
  Rng rng(23);
  for (int k = 0; k < 1000; ++k) {
    const UavState a{static_cast<int>(rng.uniform_int(0, 63)), static_cast<int>(rng.uniform_int(0, 63)),
                     static_cast<int>(rng.uniform_int(0, 11)), 0};
    const UavState b{static_cast<int>(rng.uniform_int(0, 63)), static_cast<int>(rng.uniform_int(0, 63)),
                     static_cast<int>(rng.uniform_int(0, 11)), 0};
    EXPECT_GE(dubins_distance(a, b) * kMaxSpeed, kCellMetres * std::hypot(a.x - b.x, a.y - b.y) * (1 - 1e-12));
  }
}

// --- backward Dijkstra ------------------------------------------------------------

TEST(BackwardDijkstra, EmptyMapIsOctile) {
  grid2d::CostGrid map(25, 25);
  Occupancy occ(map, 0);
  BackwardDijkstra t(occ, 7, 12);
  EXPECT_EQ(t.metres(7, 12), 0.0);
  for (int y = 0; y < 25; ++y)
    for (int x = 0; x < 25; ++x) {
      const int dx = std::abs(x - 7);
      const int dy = std::abs(y - 12);
      const double octile = kCellMetres * (std::max(dx, dy) - std::min(dx, dy)) +
                            kCellMetres * std::numbers::sqrt2 * std::min(dx, dy);
      EXPECT_NEAR(t.metres(x, y), octile, 1e-9);
    }
  EXPECT_NEAR(t.seconds({10, 12, 0, 0}), 9.0 / 8, 1e-12);
}

TEST(BackwardDijkstra, BlockedGoalGivesInfiniteTable) {
  grid2d::CostGrid map(5, 5);
  map.set(2, 2, grid2d::CostGrid::kObstacle);
  BackwardDijkstra t(Occupancy(map, 0), 2, 2);
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x) EXPECT_EQ(t.metres(x, y), kInfinity);
}

TEST(BackwardDijkstra, ExceedsEuclideanBehindWall) {
  const auto map = grid2d::cul_de_sac_map(64);
  Occupancy occ(map, 0);
  const UavState goal{56, 32, 0, 0};
  BackwardDijkstra t(occ, goal.x, goal.y);
  Rng rng(8);
  int sampled = 0;
  int strictly_larger = 0;
  while (sampled < 20) {
    const UavState s{static_cast<int>(rng.uniform_int(18, 38)), static_cast<int>(rng.uniform_int(18, 46)), 0, 0};
    if (!occ.free(s.x, s.y)) continue;
    ++sampled;
    EXPECT_GE(t.seconds(s), euclidean_time(s, goal) - 1e-12);
    if (t.seconds(s) > euclidean_time(s, goal) * 1.2) ++strictly_larger;
  }
  EXPECT_EQ(strictly_larger, 20);
}

TEST(BackwardDijkstra, ConsistentOnRandomMaps) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto map = grid2d::random_map(40, 40, seed, 0.25);
    Occupancy occ(map, 0);
    Rng rng(seed);
    int gx = 0;
    int gy = 0;
    do {
      gx = static_cast<int>(rng.uniform_int(0, 39));
      gy = static_cast<int>(rng.uniform_int(0, 39));
    } while (!occ.free(gx, gy));
    BackwardDijkstra t(occ, gx, gy);
    for (int y = 0; y < 40; ++y)
      for (int x = 0; x < 40; ++x)
        for (auto [ox, oy] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}, std::pair{1, -1}}) {
          if (!occ.free(x, y) || !occ.free(x + ox, y + oy)) continue;
          const double a = t.metres(x, y);
          const double b = t.metres(x + ox, y + oy);
          if (a == kInfinity || b == kInfinity) {
            EXPECT_EQ(a, b);
            continue;
          }
          EXPECT_LE(std::abs(a - b), kCellMetres * std::hypot(ox, oy) + 1e-9);
        }
  }
}

// --- search ----------------------------------------------------------------------

// The Euclidean anchor never exceeds the optimal duration found by a
// single (1, 1) iteration, which in turn matches the exact Dijkstra oracle.
TEST(UavSearch, AnchorAdmissibleOnRandomMaps) {
  Rng rng(99);
  int instances = 0;
  int checked_oracle = 0;
  while (instances < 50) {
    const auto map = grid2d::noisy_obstacle_map(64, 64, static_cast<std::uint64_t>(instances) + 1000, 1, 1, 0.1);
    Uav4D d(map, shipped());
    auto pick = [&] {
      for (;;) {
        const UavState s{3 * static_cast<int>(rng.uniform_int(0, 21)), 3 * static_cast<int>(rng.uniform_int(0, 21)),
                         static_cast<int>(rng.uniform_int(0, 11)), 0};
        if (d.valid(s)) return s;
      }
    };
    const UavState start = pick();
    UavState goal = pick();
    if (start.x == goal.x && start.y == goal.y) continue;
    PlannerConfig cfg;
    cfg.w1_init = 1;
    cfg.w2_init = 1;
    cfg.anytime = false;
    auto fams = heuristic_families(d, goal);
    std::vector<HeuristicSpec<UavState>> hs{fams[0]};
    for (int r : {kHigh, kLow})
      for (const auto& f : fams) hs.push_back({r, f.evaluate, f.name});
    AmraPlanner<Uav4D> planner(d, hs, cfg);
    const auto res = planner.plan(start, goal_pose(goal));
    if (!res.solved()) continue;
    ++instances;
    const Cost opt = res.best().cost;
    EXPECT_LE(euclidean_time(start, goal), opt + 1e-12);
    if (instances % 10 == 0) {
      const auto exact = bench::oracle_opt(d, start, goal_pose(goal));
      ASSERT_TRUE(exact.has_value());
      EXPECT_NEAR(*exact, opt, 1e-9 * opt);
      ++checked_oracle;
    }
  }
  EXPECT_EQ(checked_oracle, 5);
}

TEST(UavSearch, EuclideanConsistentAlongEdges) {
  const auto map = grid2d::random_map(48, 48, 3, 0.1);
  Uav4D d(map, shipped());
  const UavState goal{40, 40, 0, 0};
  Rng rng(4);
  std::vector<Edge<UavState>> out;
  for (int k = 0; k < 2000; ++k) {
    const UavState s{static_cast<int>(rng.uniform_int(0, 47)), static_cast<int>(rng.uniform_int(0, 47)),
                     static_cast<int>(rng.uniform_int(0, 11)), static_cast<int>(rng.uniform_int(0, 2))};
    if (!d.valid(s)) continue;
    out.clear();
    union_successors(d, s, out);
    for (const auto& e : out) EXPECT_LE(euclidean_time(s, goal), euclidean_time(e.to, goal) + e.cost + 1e-12);
  }
}

TEST(UavSearch, AnytimeRunImprovesToOptimal) {
  const auto map = grid2d::cul_de_sac_map(64);
  Uav4D d(map, shipped());
  const UavState start{18, 33, 0, 0};
  const UavState goal{54, 33, 0, 0};
  ASSERT_TRUE(d.valid(start));
  auto fams = heuristic_families(d, goal);
  std::vector<HeuristicSpec<UavState>> hs{fams[0]};
  for (int r : {kHigh, kLow})
    for (const auto& f : fams) hs.push_back({r, f.evaluate, f.name});
  AmraPlanner<Uav4D> planner(d, hs);
  const auto res = planner.plan(start, goal_pose(goal));
  ASSERT_TRUE(res.solved());
  EXPECT_EQ(res.status, PlanStatus::kComplete);
  EXPECT_EQ(res.solutions.back().bound, 1.0);
  for (std::size_t i = 1; i < res.solutions.size(); ++i) {
    EXPECT_LE(res.solutions[i].cost, res.solutions[i - 1].cost);
    EXPECT_LE(res.solutions[i].bound, res.solutions[i - 1].bound);
  }
  const auto exact = bench::oracle_opt(d, start, goal_pose(goal));
  EXPECT_NEAR(res.solutions.back().cost, *exact, 1e-9 * *exact);
}

}  // namespace
}  // namespace amra::uav4d
