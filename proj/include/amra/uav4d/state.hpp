#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>

namespace amra::uav4d {

inline constexpr double kCellMetres = 3.0;  // fine lattice spacing
inline constexpr int kHeadings = 12;
inline constexpr std::array<double, 3> kVelocities{0.0, 3.0, 8.0};
inline constexpr int kNumVelocities = static_cast<int>(kVelocities.size());
inline constexpr double kMaxSpeed = 8.0;

inline constexpr int kHigh = 1;  // 3 m steps
inline constexpr int kLow = 2;   // 9 m steps
inline constexpr std::array<int, 3> kStepCells{0, 1, 3};

constexpr double heading_angle(int theta) { return theta * (2 * std::numbers::pi / kHeadings); }

/// Angle wrapped into [0, 2pi).
inline double wrap_angle(double a) {
  a = std::fmod(a, 2 * std::numbers::pi);
  return a < 0 ? a + 2 * std::numbers::pi : a;
}

/// Smallest absolute difference between two angles.
inline double angle_distance(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, 2 * std::numbers::pi - d);
}

/// Position in fine lattice cells, heading index, velocity index.
struct UavState {
  int x = 0;
  int y = 0;
  int theta = 0;
  int v = 0;

  friend bool operator==(const UavState&, const UavState&) = default;
  friend auto operator<=>(const UavState&, const UavState&) = default;
};

inline std::string to_string(const UavState& s) {
  return std::to_string(s.x) + ' ' + std::to_string(s.y) + ' ' + std::to_string(s.theta) + ' ' + std::to_string(s.v);
}

/// Continuous pose in metres and radians.
struct Pose {
  double x = 0;
  double y = 0;
  double theta = 0;
};

inline Pose pose_of(const UavState& s) {
  return {s.x * kCellMetres, s.y * kCellMetres, heading_angle(s.theta)};
}

}  // namespace amra::uav4d

template <>
struct std::hash<amra::uav4d::UavState> {
  std::size_t operator()(const amra::uav4d::UavState& s) const noexcept {
    const auto packed = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.x)) << 32) ^
                        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.y)) << 8) ^
                        static_cast<std::uint64_t>(s.theta * 3 + s.v);
    return std::hash<std::uint64_t>{}(packed * 0x9e3779b97f4a7c15ULL);
  }
};
