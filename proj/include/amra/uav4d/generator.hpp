#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "amra/uav4d/primitives.hpp"
#include "amra/uav4d/state.hpp"

namespace amra::uav4d {

struct GeneratorConfig {
  double accel = 5.0;          // m/s^2 along the path
  double lateral_accel = 8.0;  // m/s^2, caps speed through curves
  double turn_rate = std::numbers::pi / 6;  // rad/s for in-place turns
  double sample_spacing = 1.0;              // metres between swept poses
  double footprint_radius = 0.0;
};

/// Heading-0 primitive shape in resolution steps: end offset (forward,
/// lateral) and heading change in 30 degree units.
struct PrimitiveTemplate {
  int res = kHigh;
  int forward = 1;
  int lateral = 0;
  int turn = 0;
};

inline std::vector<PrimitiveTemplate> default_templates() {
  std::vector<PrimitiveTemplate> t;
  for (int n : {1, 2, 3, 4}) t.push_back({kHigh, n, 0, 0});
  for (int s : {-1, 1}) {
    t.push_back({kHigh, 2, s, s});
    t.push_back({kHigh, 2, 2 * s, 2 * s});
  }
  for (int n : {1, 2}) t.push_back({kLow, n, 0, 0});
  for (int s : {-1, 1}) t.push_back({kLow, 2, s, s});
  return t;
}

namespace detail {

// Cubic Hermite curve from the origin at heading a0 to (px, py) at heading a1,
// tangent magnitudes equal to the chord length.
struct Hermite {
  double px, py, a0, a1, m;

  [[nodiscard]] std::array<double, 2> at(double u) const {
    const double h10 = u * u * u - 2 * u * u + u;
    const double h01 = -2 * u * u * u + 3 * u * u;
    const double h11 = u * u * u - u * u;
    return {h10 * m * std::cos(a0) + h01 * px + h11 * m * std::cos(a1),
            h10 * m * std::sin(a0) + h01 * py + h11 * m * std::sin(a1)};
  }
  [[nodiscard]] std::array<double, 2> d1(double u) const {
    const double d10 = 3 * u * u - 4 * u + 1;
    const double d01 = -6 * u * u + 6 * u;
    const double d11 = 3 * u * u - 2 * u;
    return {d10 * m * std::cos(a0) + d01 * px + d11 * m * std::cos(a1),
            d10 * m * std::sin(a0) + d01 * py + d11 * m * std::sin(a1)};
  }
  [[nodiscard]] std::array<double, 2> d2(double u) const {
    const double s10 = 6 * u - 4;
    const double s01 = -12 * u + 6;
    const double s11 = 6 * u - 2;
    return {s10 * m * std::cos(a0) + s01 * px + s11 * m * std::cos(a1),
            s10 * m * std::sin(a0) + s01 * py + s11 * m * std::sin(a1)};
  }
};

// Trapezoidal (or triangular) speed profile over distance L.
struct SpeedProfile {
  double vs, ve, vtop, a, t1, t2, t3, d1, d2;

  [[nodiscard]] double duration() const { return t1 + t2 + t3; }
  [[nodiscard]] double distance_at(double t) const {
    if (t <= t1) return vs * t + 0.5 * a * t * t;
    if (t <= t1 + t2) return d1 + vtop * (t - t1);
    const double u = std::min(t - t1 - t2, t3);
    return d1 + d2 + vtop * u - 0.5 * a * u * u;
  }
};

inline std::optional<SpeedProfile> plan_speed(double L, double vs, double ve, double a, double vcap) {
  if (vs > vcap + 1e-12 || ve > vcap + 1e-12) return std::nullopt;
  if (std::abs(ve * ve - vs * vs) > 2 * a * L + 1e-12) return std::nullopt;
  const double vpeak = std::sqrt((2 * a * L + vs * vs + ve * ve) / 2);
  const double vtop = std::min(vpeak, vcap);
  if (!(vtop > 0)) return std::nullopt;
  SpeedProfile p{vs, ve, vtop, a, 0, 0, 0, 0, 0};
  p.t1 = (vtop - vs) / a;
  p.d1 = (vtop * vtop - vs * vs) / (2 * a);
  p.t3 = (vtop - ve) / a;
  const double d3 = (vtop * vtop - ve * ve) / (2 * a);
  p.d2 = std::max(0.0, L - p.d1 - d3);
  p.t2 = p.d2 / vtop;
  return p;
}

// Heading-m offset (m in 0..2) of a template, snapped to its lattice, then
// turned by q exact quarter turns so that quarter-turn symmetry is exact.
inline std::array<int, 2> template_offset(const PrimitiveTemplate& t, int heading) {
  const int step = kStepCells[static_cast<std::size_t>(t.res)];
  const auto [x, y] = rotate_offset(t.forward, t.lateral, heading % 3);
  int ix = static_cast<int>(std::lround(x)) * step;
  int iy = static_cast<int>(std::lround(y)) * step;
  for (int q = 0; q < heading / 3; ++q) {
    const int tmp = ix;
    ix = -iy;
    iy = tmp;
  }
  return {ix, iy};
}

inline std::optional<MotionPrimitive> build_primitive(const PrimitiveTemplate& t, int heading, int vs, int ve,
                                                      const GeneratorConfig& cfg) {
  const auto [dx, dy] = template_offset(t, heading);
  const int end_heading = ((heading + t.turn) % kHeadings + kHeadings) % kHeadings;
  const double px = dx * kCellMetres;
  const double py = dy * kCellMetres;
  const double a0 = heading_angle(heading);
  const double a1 = heading_angle(end_heading);
  const double chord = std::hypot(px, py);
  if (chord == 0) return std::nullopt;
  if (px * std::cos(a0) + py * std::sin(a0) <= 0) return std::nullopt;
  const Hermite curve{px, py, a0, a1, chord};

  constexpr int kTable = 2000;
  std::vector<double> arc(kTable + 1, 0.0);
  double max_curvature = 0;
  auto prev = curve.at(0);
  for (int i = 0; i <= kTable; ++i) {
    const double u = static_cast<double>(i) / kTable;
    const auto p = curve.at(u);
    if (i > 0) arc[i] = arc[i - 1] + std::hypot(p[0] - prev[0], p[1] - prev[1]);
    prev = p;
    const auto d = curve.d1(u);
    const auto dd = curve.d2(u);
    const double speed = std::hypot(d[0], d[1]);
    if (speed < 1e-9) return std::nullopt;
    max_curvature = std::max(max_curvature, std::abs(d[0] * dd[1] - d[1] * dd[0]) / (speed * speed * speed));
  }
  const double L = arc.back();
  const double vcap =
      max_curvature > 0 ? std::min(kMaxSpeed, std::sqrt(cfg.lateral_accel / max_curvature)) : kMaxSpeed;
  const auto profile = plan_speed(L, kVelocities[static_cast<std::size_t>(vs)], kVelocities[static_cast<std::size_t>(ve)],
                                  cfg.accel, vcap);
  if (!profile) return std::nullopt;

  MotionPrimitive prim{t.res, heading, vs, dx, dy, end_heading, ve, profile->duration(), {}};
  const int n = std::max(2, static_cast<int>(std::ceil(L / cfg.sample_spacing)) + 1);
  for (int k = 0; k < n; ++k) {
    const double time = prim.duration * k / (n - 1);
    const double s = std::clamp(profile->distance_at(time), 0.0, L);
    const auto it = std::lower_bound(arc.begin(), arc.end(), s);
    const auto i = static_cast<int>(std::clamp<std::ptrdiff_t>(it - arc.begin(), 1, kTable));
    const double span = arc[i] - arc[i - 1];
    const double frac = span > 0 ? (s - arc[i - 1]) / span : 0;
    const double u = (i - 1 + frac) / kTable;
    const auto p = curve.at(u);
    const auto d = curve.d1(u);
    prim.swept.push_back({p[0], p[1], wrap_angle(std::atan2(d[1], d[0])), time});
  }
  prim.swept.front() = {0, 0, a0, 0};
  prim.swept.back() = {px, py, a1, prim.duration};
  return prim;
}

}  // namespace detail

/// Forward-simulates every template for every heading and every pair of
/// start/end velocities, keeping the combinations that are feasible from all
/// twelve headings so the set is closed under heading rotation. From rest the
/// vehicle may also turn in place by one heading step.
inline PrimitiveSet generate_primitives(const GeneratorConfig& cfg = {},
                                        const std::vector<PrimitiveTemplate>& templates = default_templates()) {
  std::vector<MotionPrimitive> prims;
  for (int heading = 0; heading < kHeadings; ++heading) {
    for (int s : {-1, 1}) {
      const double dur = (std::numbers::pi / 6) / cfg.turn_rate;
      const int end = (heading + s + kHeadings) % kHeadings;
      MotionPrimitive p{kHigh, heading, 0, 0, 0, end, 0, dur, {}};
      constexpr int n = 5;
      for (int k = 0; k < n; ++k) {
        const double f = static_cast<double>(k) / (n - 1);
        p.swept.push_back({0, 0, wrap_angle(heading_angle(heading) + s * f * std::numbers::pi / 6), dur * f});
      }
      p.swept.back().theta = heading_angle(end);
      prims.push_back(std::move(p));
    }
  }
  for (const auto& t : templates) {
    for (int vs = 0; vs < kNumVelocities; ++vs) {
      for (int ve = 0; ve < kNumVelocities; ++ve) {
        if (vs == 0 && ve == 0) continue;
        std::vector<MotionPrimitive> batch;
        for (int heading = 0; heading < kHeadings; ++heading) {
          auto p = detail::build_primitive(t, heading, vs, ve, cfg);
          if (!p) break;
          batch.push_back(std::move(*p));
        }
        if (batch.size() == kHeadings) prims.insert(prims.end(), batch.begin(), batch.end());
      }
    }
  }
  std::stable_sort(prims.begin(), prims.end(), [](const MotionPrimitive& a, const MotionPrimitive& b) {
    return std::tie(a.res, a.start_theta, a.start_v) < std::tie(b.res, b.start_theta, b.start_v);
  });
  // Different templates can snap onto the same lattice offset; keep the first.
  std::set<std::tuple<int, int, int, int, int, int, int>> seen;
  std::vector<MotionPrimitive> unique;
  for (auto& p : prims) {
    if (seen.emplace(p.res, p.start_theta, p.start_v, p.dx, p.dy, p.end_theta, p.end_v).second)
      unique.push_back(std::move(p));
  }
  return PrimitiveSet(std::move(unique), cfg.footprint_radius);
}

}  // namespace amra::uav4d
