#pragma once

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "amra/core/types.hpp"

namespace amra {

/// Shortest decimal form that parses back to the same double.
inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_number(std::string_view s) {
  // std::from_chars for double is unavailable on older libstdc++; strtod is exact.
  std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) throw std::invalid_argument("not a number: '" + tmp + "'");
  return v;
}

/// Header line `cost=<v> bound=<v> iter=<n> expansions=<n>`, then one
/// `state_repr<TAB>g` line per waypoint.
template <typename State, typename Repr>
void write_solution(std::ostream& os, const SolutionRecord<State>& sol, Repr&& repr) {
  os << "cost=" << format_number(sol.cost) << " bound=" << format_number(sol.bound) << " iter=" << sol.iteration
     << " expansions=" << sol.stats.expansions_total << '\n';
  for (const auto& wp : sol.path) os << repr(wp.state) << '\t' << format_number(wp.g) << '\n';
}

struct SolutionText {
  Cost cost = 0;
  double bound = 0;
  int iteration = 0;
  std::uint64_t expansions = 0;
  std::vector<std::pair<std::string, Cost>> waypoints;
};

inline SolutionText read_solution(std::istream& is) {
  SolutionText out;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("solution: missing header");
  std::istringstream header(line);
  std::string tok;
  int seen = 0;
  while (header >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::runtime_error("solution: bad header token '" + tok + "'");
    const std::string k = tok.substr(0, eq);
    const std::string v = tok.substr(eq + 1);
    if (k == "cost") out.cost = parse_number(v);
    else if (k == "bound") out.bound = parse_number(v);
    else if (k == "iter") out.iteration = std::stoi(v);
    else if (k == "expansions") out.expansions = std::stoull(v);
    else throw std::runtime_error("solution: unknown header key '" + k + "'");
    ++seen;
  }
  if (seen != 4) throw std::runtime_error("solution: header needs cost, bound, iter, expansions");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) throw std::runtime_error("solution: waypoint line without TAB");
    out.waypoints.emplace_back(line.substr(0, tab), parse_number(line.substr(tab + 1)));
  }
  return out;
}

}  // namespace amra
