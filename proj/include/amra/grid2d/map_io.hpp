#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "amra/core/parse_error.hpp"
#include "amra/grid2d/grid.hpp"

namespace amra::grid2d {

using amra::ParseError;

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  bool next(std::string& line) {
    if (!std::getline(is_, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++number_;
    return true;
  }
  [[nodiscard]] int number() const noexcept { return number_; }

 private:
  std::istream& is_;
  int number_ = 0;
};

inline int parse_dimension(LineReader& in, std::string_view keyword) {
  std::string line;
  if (!in.next(line)) throw ParseError(in.number(), 0, "missing '" + std::string(keyword) + "' header");
  std::istringstream ss(line);
  std::string key;
  long long value = 0;
  std::string extra;
  if (!(ss >> key) || key != keyword) throw ParseError(in.number(), 1, "expected '" + std::string(keyword) + " <n>'");
  if (!(ss >> value) || value < 1 || value > 1 << 20)
    throw ParseError(in.number(), static_cast<int>(key.size()) + 2, "bad " + std::string(keyword) + " value");
  if (ss >> extra) throw ParseError(in.number(), 0, "trailing text after " + std::string(keyword));
  return static_cast<int>(value);
}

struct Header {
  std::string type;
  int height;
  int width;
};

inline Header parse_header(LineReader& in) {
  std::string line;
  if (!in.next(line)) throw ParseError(1, 0, "empty input");
  std::istringstream ss(line);
  std::string key;
  Header h{};
  if (!(ss >> key) || key != "type" || !(ss >> h.type)) throw ParseError(in.number(), 1, "expected 'type <name>'");
  h.height = parse_dimension(in, "height");
  h.width = parse_dimension(in, "width");
  if (!in.next(line) || line != "map") throw ParseError(in.number(), 1, "expected 'map'");
  return h;
}

inline void require_no_trailing_rows(LineReader& in) {
  std::string line;
  while (in.next(line)) {
    if (!line.empty()) throw ParseError(in.number(), 1, "more map rows than the height header declares");
  }
}

}  // namespace detail

/// MovingAI octile `.map`: `.` and `G` are passable at cost 1; `@`, `O`, `T`,
/// `S` and `W` are obstacles.
inline CostGrid parse_movingai_body(detail::LineReader& in, const detail::Header& h) {
  CostGrid grid(h.width, h.height);
  std::string line;
  for (int y = 0; y < h.height; ++y) {
    if (!in.next(line))
      throw ParseError(in.number(), 0,
                       "expected " + std::to_string(h.height) + " map rows, found " + std::to_string(y));
    if (static_cast<int>(line.size()) != h.width)
      throw ParseError(in.number(), std::min(static_cast<int>(line.size()), h.width) + 1,
                       "row has " + std::to_string(line.size()) + " glyphs, expected " + std::to_string(h.width));
    for (int x = 0; x < h.width; ++x) {
      switch (line[static_cast<std::size_t>(x)]) {
        case '.':
        case 'G':
          break;
        case '@':
        case 'O':
        case 'T':
        case 'S':
        case 'W':
          grid.set(x, y, CostGrid::kObstacle);
          break;
        default:
          throw ParseError(in.number(), x + 1, std::string("unknown glyph '") + line[static_cast<std::size_t>(x)] + "'");
      }
    }
  }
  detail::require_no_trailing_rows(in);
  return grid;
}

/// Non-uniform cost map: `type cost` header, rows of comma-separated integer
/// costs, -1 for obstacles.
inline CostGrid parse_cost_body(detail::LineReader& in, const detail::Header& h) {
  CostGrid grid(h.width, h.height);
  std::string line;
  for (int y = 0; y < h.height; ++y) {
    if (!in.next(line))
      throw ParseError(in.number(), 0,
                       "expected " + std::to_string(h.height) + " map rows, found " + std::to_string(y));
    std::size_t pos = 0;
    for (int x = 0; x < h.width; ++x) {
      if (pos > line.size()) throw ParseError(in.number(), static_cast<int>(line.size()) + 1, "row too short");
      const std::size_t comma = line.find(',', pos);
      const std::size_t end = comma == std::string::npos ? line.size() : comma;
      const std::string field = line.substr(pos, end - pos);
      const int column = static_cast<int>(pos) + 1;
      char* stop = nullptr;
      const long v = std::strtol(field.c_str(), &stop, 10);
      if (field.empty() || *stop != '\0') throw ParseError(in.number(), column, "bad cost '" + field + "'");
      if (v != CostGrid::kObstacle && (v < 1 || v > 1'000'000))
        throw ParseError(in.number(), column, "cost out of range: " + field);
      grid.set(x, y, static_cast<std::int32_t>(v));
      if (x + 1 < h.width && comma == std::string::npos)
        throw ParseError(in.number(), static_cast<int>(line.size()) + 1,
                         "row has " + std::to_string(x + 1) + " values, expected " + std::to_string(h.width));
      pos = end + 1;
    }
    if (pos <= line.size()) throw ParseError(in.number(), static_cast<int>(pos), "row has more than " + std::to_string(h.width) + " values");
  }
  detail::require_no_trailing_rows(in);
  return grid;
}

inline CostGrid parse_movingai(std::istream& is) {
  detail::LineReader in(is);
  const auto h = detail::parse_header(in);
  if (h.type != "octile") throw ParseError(1, 6, "expected 'type octile'");
  return parse_movingai_body(in, h);
}

inline CostGrid parse_movingai(std::string_view text) {
  std::istringstream ss{std::string(text)};
  return parse_movingai(ss);
}

/// Reads either format, dispatching on the `type` header.
inline CostGrid parse_map(std::istream& is) {
  detail::LineReader in(is);
  const auto h = detail::parse_header(in);
  if (h.type == "octile") return parse_movingai_body(in, h);
  if (h.type == "cost") return parse_cost_body(in, h);
  throw ParseError(1, 6, "unknown map type '" + h.type + "'");
}

inline CostGrid parse_map(std::string_view text) {
  std::istringstream ss{std::string(text)};
  return parse_map(ss);
}

inline CostGrid load_map(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open map '" + path + "'");
  try {
    return parse_map(f);
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

/// Writes `octile` when every passable cell costs 1, `cost` otherwise.
inline void write_map(std::ostream& os, const CostGrid& g) {
  bool unit = true;
  for (int y = 0; y < g.height() && unit; ++y)
    for (int x = 0; x < g.width(); ++x)
      if (g.at(x, y) != CostGrid::kObstacle && g.at(x, y) != 1) {
        unit = false;
        break;
      }
  os << "type " << (unit ? "octile" : "cost") << "\nheight " << g.height() << "\nwidth " << g.width() << "\nmap\n";
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      const auto c = g.at(x, y);
      if (unit) {
        os << (c == CostGrid::kObstacle ? '@' : '.');
      } else {
        if (x > 0) os << ',';
        os << c;
      }
    }
    os << '\n';
  }
}

}  // namespace amra::grid2d
