#pragma once

#include <algorithm>
#include <charconv>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "amra/core/parse_error.hpp"
#include "amra/core/solution_io.hpp"
#include "amra/core/types.hpp"
#include "amra/uav4d/state.hpp"

namespace amra::uav4d {

/// Sampled pose along a primitive, relative to its start cell. `t` is seconds
/// since the primitive began.
struct SweptPose {
  double x = 0;
  double y = 0;
  double theta = 0;
  double t = 0;
};

struct MotionPrimitive {
  int res = kHigh;
  int start_theta = 0;
  int start_v = 0;
  int dx = 0;  // fine cells
  int dy = 0;
  int end_theta = 0;
  int end_v = 0;
  double duration = 0;
  std::vector<SweptPose> swept;
};

/// Immutable after construction. Primitives keep their input order; ids are
/// indices into primitives().
class PrimitiveSet {
 public:
  PrimitiveSet() = default;
  explicit PrimitiveSet(std::vector<MotionPrimitive> prims, double footprint_radius = 0)
      : prims_(std::move(prims)), radius_(footprint_radius) {
    for (std::size_t i = 0; i < prims_.size(); ++i) {
      const auto& p = prims_[i];
      groups_[group_index(p.res, p.start_theta, p.start_v)].push_back(static_cast<int>(i));
    }
  }

  [[nodiscard]] const std::vector<MotionPrimitive>& primitives() const noexcept { return prims_; }
  [[nodiscard]] const MotionPrimitive& at(int id) const { return prims_.at(static_cast<std::size_t>(id)); }
  [[nodiscard]] std::size_t size() const noexcept { return prims_.size(); }
  [[nodiscard]] double footprint_radius() const noexcept { return radius_; }

  /// Ids of the primitives applicable at (res, theta, v).
  [[nodiscard]] const std::vector<int>& group(int res, int theta, int v) const {
    return groups_[group_index(res, theta, v)];
  }

 private:
  static std::size_t group_index(int res, int theta, int v) {
    if (res < kHigh || res > kLow || theta < 0 || theta >= kHeadings || v < 0 || v >= kNumVelocities)
      throw ContractViolation("primitive group out of range");
    return static_cast<std::size_t>(((res - 1) * kHeadings + theta) * kNumVelocities + v);
  }

  std::vector<MotionPrimitive> prims_;
  std::array<std::vector<int>, 2 * kHeadings * kNumVelocities> groups_{};
  double radius_ = 0;
};

inline constexpr double kPoseTolerance = 1e-6;

/// Single-primitive checks: ranges, lattice alignment, positive duration,
/// endpoint poses and increasing timestamps. Returns the first violation.
inline std::optional<std::string> check_primitive(const MotionPrimitive& p) {
  if (p.res != kHigh && p.res != kLow) return "res must be 3 or 9";
  if (p.start_theta < 0 || p.start_theta >= kHeadings || p.end_theta < 0 || p.end_theta >= kHeadings)
    return "heading index out of range";
  if (p.start_v < 0 || p.start_v >= kNumVelocities || p.end_v < 0 || p.end_v >= kNumVelocities)
    return "velocity index out of range";
  const int step = kStepCells[static_cast<std::size_t>(p.res)];
  if (p.dx % step != 0 || p.dy % step != 0)
    return "offset (" + std::to_string(p.dx) + ", " + std::to_string(p.dy) + ") is not a multiple of " +
           std::to_string(step) + " cells";
  if (!(p.duration > 0) || !std::isfinite(p.duration)) return "duration must be positive";
  if (p.swept.size() < 2) return "need at least two poses";
  const auto& first = p.swept.front();
  const auto& last = p.swept.back();
  if (std::abs(first.x) > kPoseTolerance || std::abs(first.y) > kPoseTolerance ||
      angle_distance(first.theta, heading_angle(p.start_theta)) > kPoseTolerance)
    return "first pose is not the origin at the start heading";
  if (std::abs(last.x - p.dx * kCellMetres) > kPoseTolerance || std::abs(last.y - p.dy * kCellMetres) > kPoseTolerance ||
      angle_distance(last.theta, heading_angle(p.end_theta)) > kPoseTolerance)
    return "last pose does not match the offset and end heading";
  for (std::size_t i = 1; i < p.swept.size(); ++i) {
    if (!(p.swept[i].t > p.swept[i - 1].t)) return "pose timestamps are not increasing at pose " + std::to_string(i);
  }
  if (std::abs(first.t) > kPoseTolerance || std::abs(last.t - p.duration) > kPoseTolerance * std::max(1.0, p.duration))
    return "pose timestamps must span [0, dur]";
  return std::nullopt;
}

/// Rotates the offset (dx, dy) by k heading steps, in metres.
inline std::pair<double, double> rotate_offset(double x, double y, int k) {
  const double a = heading_angle(k);
  return {x * std::cos(a) - y * std::sin(a), x * std::sin(a) + y * std::cos(a)};
}

/// Heading-symmetry closure. For every primitive p and every k in 1..11 there
/// must be a primitive q of the same resolution and velocities, with both
/// headings shifted by k, whose offset lies within sqrt(2) resolution steps of
/// p's offset rotated by k*30 degrees (offsets are snapped to the lattice, so
/// exact rotation is impossible off the axes). Quarter turns map the lattice
/// onto itself and must match exactly. Every (res, theta, v) group that
/// appears for one heading must appear for all twelve.
inline std::optional<std::string> check_closure(const PrimitiveSet& set) {
  const auto& prims = set.primitives();
  for (std::size_t i = 0; i < prims.size(); ++i) {
    const auto& p = prims[i];
    const double step_m = kStepCells[static_cast<std::size_t>(p.res)] * kCellMetres;
    for (int k = 1; k < kHeadings; ++k) {
      const int st = (p.start_theta + k) % kHeadings;
      const int et = (p.end_theta + k) % kHeadings;
      const auto [rx, ry] = rotate_offset(p.dx * kCellMetres, p.dy * kCellMetres, k);
      const bool quarter = k % 3 == 0;
      bool found = false;
      for (int id : set.group(p.res, st, p.start_v)) {
        const auto& q = set.at(id);
        if (q.end_theta != et || q.end_v != p.end_v) continue;
        const double ex = q.dx * kCellMetres - rx;
        const double ey = q.dy * kCellMetres - ry;
        const double tol = quarter ? 1e-9 : std::sqrt(2.0) * step_m + 1e-9;
        if (std::hypot(ex, ey) <= tol) {
          found = true;
          break;
        }
      }
      if (!found)
        return "primitive " + std::to_string(i) + " has no counterpart rotated by " + std::to_string(k * 30) +
               " degrees";
    }
  }
  return std::nullopt;
}

namespace detail {

// Reads `key=value` and returns the value text.
inline std::string_view field(std::string_view token, std::string_view key, int line, int column) {
  if (token.size() <= key.size() || token.substr(0, key.size()) != key || token[key.size()] != '=')
    throw ParseError(line, column, "expected '" + std::string(key) + "=<value>'");
  return token.substr(key.size() + 1);
}

inline int int_field(std::string_view token, std::string_view key, int line, int column) {
  const auto text = field(token, key, line, column);
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ParseError(line, column, "bad integer for " + std::string(key));
  return v;
}

inline double number_field(std::string_view text, int line, int column, std::string_view what) {
  try {
    return parse_number(text);
  } catch (const std::invalid_argument&) {
    throw ParseError(line, column, "bad number for " + std::string(what));
  }
}

}  // namespace detail

/// Primitive file reader. Records are
///   prim res=<3|9> sθ=<i> sv=<i> dx=<n> dy=<n> eθ=<i> ev=<i> dur=<s> nposes=<k>
/// followed by k lines `x y θ [t]` (metres, radians, seconds). Offsets are in
/// fine 3 m cells. Blank lines and `#` comments are skipped; an optional
/// `radius=<m>` line before the first record sets the footprint radius. When
/// timestamps are omitted the poses are taken as evenly spaced in time.
inline PrimitiveSet load_primitives(std::istream& is) {
  std::vector<MotionPrimitive> prims;
  std::optional<double> radius;
  std::string line;
  int number = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++number;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };

  while (next_line()) {
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.size() == 1 && tok[0].rfind("radius=", 0) == 0) {
      if (!prims.empty() || radius) throw ParseError(number, 1, "radius must precede the first primitive");
      radius = detail::number_field(tok[0].substr(7), number, 8, "radius");
      if (!(*radius >= 0)) throw ParseError(number, 8, "radius must be non-negative");
      continue;
    }
    if (tok.size() != 10 || tok[0] != "prim") throw ParseError(number, 1, "expected a 'prim' header with 9 fields");
    auto column = [&](std::size_t i) { return static_cast<int>(line.find(tok[i])) + 1; };
    const int header_line = number;
    MotionPrimitive p;
    const int res_m = detail::int_field(tok[1], "res", number, column(1));
    if (res_m != 3 && res_m != 9) throw ParseError(number, column(1), "res must be 3 or 9");
    p.res = res_m == 3 ? kHigh : kLow;
    p.start_theta = detail::int_field(tok[2], "sθ", number, column(2));
    p.start_v = detail::int_field(tok[3], "sv", number, column(3));
    p.dx = detail::int_field(tok[4], "dx", number, column(4));
    p.dy = detail::int_field(tok[5], "dy", number, column(5));
    p.end_theta = detail::int_field(tok[6], "eθ", number, column(6));
    p.end_v = detail::int_field(tok[7], "ev", number, column(7));
    p.duration = detail::number_field(detail::field(tok[8], "dur", number, column(8)), number, column(8), "dur");
    const int n = detail::int_field(tok[9], "nposes", number, column(9));
    if (n < 2 || n > 100000) throw ParseError(number, column(9), "nposes must be in [2, 100000]");

    bool timed = false;
    for (int k = 0; k < n; ++k) {
      if (!next_line()) throw ParseError(number, 0, "expected " + std::to_string(n) + " poses");
      std::istringstream ps(line);
      std::vector<std::string> f;
      for (std::string t; ps >> t;) f.push_back(t);
      if (f.size() != 3 && f.size() != 4) throw ParseError(number, 1, "pose needs 'x y θ' or 'x y θ t'");
      if (k == 0) timed = f.size() == 4;
      if (timed != (f.size() == 4)) throw ParseError(number, 1, "poses must all have timestamps or none");
      SweptPose sp{detail::number_field(f[0], number, 1, "x"), detail::number_field(f[1], number, 1, "y"),
                   detail::number_field(f[2], number, 1, "θ"), 0};
      sp.t = timed ? detail::number_field(f[3], number, 1, "t") : p.duration * k / (n - 1);
      p.swept.push_back(sp);
    }
    if (auto err = check_primitive(p)) throw ParseError(header_line, 0, *err);
    prims.push_back(std::move(p));
  }
  if (prims.empty()) throw ParseError(number, 0, "no primitives");
  PrimitiveSet set(std::move(prims), radius.value_or(0));
  if (auto err = check_closure(set)) throw ParseError(number, 0, "symmetry closure: " + *err);
  return set;
}

inline PrimitiveSet load_primitives(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open primitive file '" + path + "'");
  try {
    return load_primitives(f);
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

inline PrimitiveSet parse_primitives(std::string_view text) {
  std::istringstream ss{std::string(text)};
  return load_primitives(ss);
}

inline void write_primitives(std::ostream& os, const PrimitiveSet& set) {
  if (set.footprint_radius() > 0) os << "radius=" << format_number(set.footprint_radius()) << '\n';
  for (const auto& p : set.primitives()) {
    os << "prim res=" << (p.res == kHigh ? 3 : 9) << " sθ=" << p.start_theta << " sv=" << p.start_v << " dx=" << p.dx
       << " dy=" << p.dy << " eθ=" << p.end_theta << " ev=" << p.end_v << " dur=" << format_number(p.duration)
       << " nposes=" << p.swept.size() << '\n';
    for (const auto& s : p.swept)
      os << format_number(s.x) << ' ' << format_number(s.y) << ' ' << format_number(s.theta) << ' '
         << format_number(s.t) << '\n';
  }
}

}  // namespace amra::uav4d
