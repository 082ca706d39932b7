#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "amra/bench/trial.hpp"
#include "amra/core/parse_error.hpp"
#include "amra/core/solution_io.hpp"

namespace amra::bench {

inline constexpr std::string_view kCsvHeader = "map,preset,trial,success,timeout,T_i_ms,T_f_ms,c_i,c_f,expansions,iterations";

namespace detail {

inline std::string opt_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

inline void require_plain(const std::string& s) {
  if (s.find_first_of(",\"\n\r") != std::string::npos)
    throw std::invalid_argument("identifier '" + s + "' may not contain commas, quotes or newlines");
}

}  // namespace detail

/// Results CSV. `comments` are written first as `# ...` lines. Missing times
/// and costs (failed trials) are empty fields. Numbers use the shortest form
/// that round-trips, so re-parsing reproduces every field exactly.
inline void write_results_csv(std::ostream& os, const std::vector<TrialResult>& rows,
                              const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) os << "# " << c << '\n';
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    detail::require_plain(r.map);
    detail::require_plain(r.preset);
    os << r.map << ',' << r.preset << ',' << r.trial << ',' << (r.success ? 1 : 0) << ',' << (r.timeout ? 1 : 0) << ','
       << detail::opt_number(r.t_i_ms) << ',' << detail::opt_number(r.t_f_ms) << ',' << detail::opt_number(r.c_i)
       << ',' << detail::opt_number(r.c_f) << ',' << r.expansions << ',' << r.iterations << '\n';
  }
}

inline std::vector<TrialResult> parse_results_csv(std::istream& is) {
  std::vector<TrialResult> rows;
  std::string line;
  int number = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != kCsvHeader) throw ParseError(number, 1, "expected header '" + std::string(kCsvHeader) + "'");
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::vector<int> col;
    std::size_t pos = 0;
    for (;;) {
      const auto comma = line.find(',', pos);
      col.push_back(static_cast<int>(pos) + 1);
      f.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (f.size() != 11) throw ParseError(number, 0, "expected 11 fields, found " + std::to_string(f.size()));
    auto integer = [&]<typename T>(std::size_t i, T) -> T {
      T v{};
      const auto* first = f[i].data();
      const auto* last = first + f[i].size();
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (f[i].empty() || ec != std::errc{} || ptr != last) throw ParseError(number, col[i], "bad integer '" + f[i] + "'");
      return v;
    };
    auto flag = [&](std::size_t i) {
      if (f[i] != "0" && f[i] != "1") throw ParseError(number, col[i], "expected 0 or 1");
      return f[i] == "1";
    };
    auto optional = [&](std::size_t i) -> std::optional<double> {
      if (f[i].empty()) return std::nullopt;
      try {
        return parse_number(f[i]);
      } catch (const std::invalid_argument&) {
        throw ParseError(number, col[i], "bad number '" + f[i] + "'");
      }
    };
    TrialResult r;
    r.map = f[0];
    r.preset = f[1];
    r.trial = integer(2, int{});
    r.success = flag(3);
    r.timeout = flag(4);
    r.t_i_ms = optional(5);
    r.t_f_ms = optional(6);
    r.c_i = optional(7);
    r.c_f = optional(8);
    r.expansions = integer(9, std::uint64_t{});
    r.iterations = integer(10, int{});
    rows.push_back(std::move(r));
  }
  if (!header) throw ParseError(number, 0, "missing header");
  return rows;
}

inline std::vector<TrialResult> parse_results_csv(std::string_view text) {
  std::istringstream ss{std::string(text)};
  return parse_results_csv(ss);
}

/// One JSON object per trial: {"map", "preset", "trial", "curve": [{"bound",
/// "cost", "time_ms", "expansions"}, ...]}.
inline void write_curves_jsonl(std::ostream& os, const std::vector<TrialResult>& rows) {
  for (const auto& r : rows) {
    nlohmann::json j;
    j["map"] = r.map;
    j["preset"] = r.preset;
    j["trial"] = r.trial;
    j["curve"] = nlohmann::json::array();
    for (const auto& p : r.curve)
      j["curve"].push_back({{"bound", p.bound}, {"cost", p.cost}, {"time_ms", p.time_ms}, {"expansions", p.expansions}});
    os << j.dump() << '\n';
  }
}

struct CurveRecord {
  std::string map;
  std::string preset;
  int trial = 0;
  std::vector<CurvePoint> curve;
};

inline std::vector<CurveRecord> parse_curves_jsonl(std::istream& is) {
  std::vector<CurveRecord> out;
  std::string line;
  int number = 0;
  while (std::getline(is, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      CurveRecord c{j.at("map").get<std::string>(), j.at("preset").get<std::string>(), j.at("trial").get<int>(), {}};
      for (const auto& p : j.at("curve"))
        c.curve.push_back({p.at("bound").get<double>(), p.at("cost").get<double>(), p.at("time_ms").get<double>(),
                           p.at("expansions").get<std::uint64_t>()});
      out.push_back(std::move(c));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(number, 0, e.what());
    }
  }
  return out;
}

// --- aggregates -------------------------------------------------------------------

struct MeanStd {
  std::optional<double> mean;
  std::optional<double> std;  // sample standard deviation; 0 for one value
};

inline MeanStd mean_std(const std::vector<double>& v) {
  if (v.empty()) return {};
  double sum = 0;
  for (double x : v) sum += x;
  const double m = sum / static_cast<double>(v.size());
  double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return {m, v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0};
}

/// Per (map, preset) aggregate. Time, cost and expansion statistics are over
/// successful trials only. Ratios divide this preset's mean by the AMRA*
/// mean on the same map.
struct GroupSummary {
  std::string map;
  std::string preset;
  int trials = 0;
  int successes = 0;
  int timeouts = 0;
  std::array<MeanStd, 5> stats;  // T_i, T_f, c_i, c_f, expansions
  std::array<std::optional<double>, 5> ratio;

  [[nodiscard]] double success_pct() const { return trials ? 100.0 * successes / trials : 0; }
  [[nodiscard]] double timeout_pct() const { return trials ? 100.0 * timeouts / trials : 0; }
};

inline constexpr std::array<std::string_view, 5> kMetricNames{"T_i_ms", "T_f_ms", "c_i", "c_f", "expansions"};

inline std::vector<GroupSummary> summarize(const std::vector<TrialResult>& rows, const std::string& reference = "amra") {
  std::vector<GroupSummary> groups;
  std::map<std::pair<std::string, std::string>, std::array<std::vector<double>, 5>> samples;
  for (const auto& r : rows) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const GroupSummary& g) { return g.map == r.map && g.preset == r.preset; });
    if (it == groups.end()) {
      groups.push_back({r.map, r.preset, 0, 0, 0, {}, {}});
      it = std::prev(groups.end());
    }
    ++it->trials;
    if (r.timeout) ++it->timeouts;
    if (!r.success) continue;
    ++it->successes;
    auto& s = samples[{r.map, r.preset}];
    s[0].push_back(*r.t_i_ms);
    s[1].push_back(*r.t_f_ms);
    s[2].push_back(*r.c_i);
    s[3].push_back(*r.c_f);
    s[4].push_back(static_cast<double>(r.expansions));
  }
  for (auto& g : groups)
    for (std::size_t k = 0; k < 5; ++k) g.stats[k] = mean_std(samples[{g.map, g.preset}][k]);
  for (auto& g : groups) {
    const auto ref = std::find_if(groups.begin(), groups.end(),
                                  [&](const GroupSummary& o) { return o.map == g.map && o.preset == reference; });
    if (ref == groups.end()) continue;
    for (std::size_t k = 0; k < 5; ++k) {
      if (g.stats[k].mean && ref->stats[k].mean && *ref->stats[k].mean > 0)
        g.ratio[k] = *g.stats[k].mean / *ref->stats[k].mean;
    }
  }
  return groups;
}

inline void write_summary_csv(std::ostream& os, const std::vector<GroupSummary>& groups) {
  os << "map,preset,trials,success_pct,timeout_pct";
  for (auto n : kMetricNames) os << ',' << n << "_mean," << n << "_std";
  for (auto n : kMetricNames) os << ',' << n << "_ratio";
  os << '\n';
  for (const auto& g : groups) {
    os << g.map << ',' << g.preset << ',' << g.trials << ',' << format_number(g.success_pct()) << ','
       << format_number(g.timeout_pct());
    for (const auto& s : g.stats) os << ',' << detail::opt_number(s.mean) << ',' << detail::opt_number(s.std);
    for (const auto& r : g.ratio) os << ',' << detail::opt_number(r);
    os << '\n';
  }
}

/// Human-readable table in the "mean ± std (ratio x)" shape.
inline void print_summary(std::ostream& os, const std::vector<GroupSummary>& groups) {
  auto cell = [](const MeanStd& s, const std::optional<double>& ratio) {
    if (!s.mean) return std::string("-");
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.4g ± %.3g", *s.mean, *s.std);
    std::string out = buf;
    if (ratio) {
      std::snprintf(buf, sizeof buf, " (%.2fx)", *ratio);
      out += buf;
    }
    return out;
  };
  for (const auto& g : groups) {
    char head[160];
    std::snprintf(head, sizeof head, "%s %-10s success %5.1f%%  timeout %5.1f%%", g.map.c_str(), g.preset.c_str(),
                  g.success_pct(), g.timeout_pct());
    os << head;
    for (std::size_t k = 0; k < 5; ++k) os << "  " << kMetricNames[k] << ' ' << cell(g.stats[k], g.ratio[k]);
    os << '\n';
  }
}

}  // namespace amra::bench
