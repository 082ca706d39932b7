#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "amra/core/domain.hpp"
#include "amra/core/types.hpp"

namespace amra {

enum class PresetKind { kWeightedAStar, kARAStar, kMHAStar, kAnytimeMHAStar, kMRAStar, kAMRAStar };

inline std::string_view to_string(PresetKind k) {
  switch (k) {
    case PresetKind::kWeightedAStar: return "wA*";
    case PresetKind::kARAStar: return "ARA*";
    case PresetKind::kMHAStar: return "MHA*";
    case PresetKind::kAnytimeMHAStar: return "A-MHA*";
    case PresetKind::kMRAStar: return "MRA*";
    case PresetKind::kAMRAStar: return "AMRA*";
  }
  return "?";
}

/// A heuristic family applied at one resolution of the searched domain.
/// Family 0 is the consistent one and doubles as the anchor.
struct HeuristicAssignment {
  int family = 0;
  int res = 0;
};

/// What a preset restricts: which of the domain's resolutions are searched
/// (renumbered 1..k through ResolutionSubset), which heuristic families drive
/// which queues, and whether the weight schedule runs.
struct Preset {
  PresetKind kind = PresetKind::kAMRAStar;
  std::vector<int> resolutions;
  std::vector<HeuristicAssignment> heuristics;  // [0] is the anchor
  bool anytime = true;

  [[nodiscard]] PlannerConfig apply(PlannerConfig base) const {
    base.anytime = anytime;
    return base;
  }
};

struct PresetOptions {
  int num_resolutions = 1;  // resolutions the full domain exposes
  int num_families = 1;     // heuristic families available
  int resolution = 1;       // single-resolution presets search this one
  std::optional<int> family;  // MRA*: the one family used at every resolution
};

/// wA* and ARA* run the anchor queue alone over one resolution; MHA* and
/// A-MHA* add every family at that resolution; MRA* uses one family per
/// resolution; AMRA* uses every family at every resolution.
inline Preset make_preset(PresetKind kind, const PresetOptions& opt) {
  if (opt.num_resolutions < 1 || opt.num_families < 1) throw ContractViolation("preset needs >= 1 resolution and family");
  if (opt.resolution < 1 || opt.resolution > opt.num_resolutions) throw ContractViolation("preset resolution out of range");
  Preset p;
  p.kind = kind;
  p.heuristics.push_back({0, 0});
  auto all_resolutions = [&] {
    std::vector<int> rs;
    for (int r = 1; r <= opt.num_resolutions; ++r) rs.push_back(r);
    return rs;
  };
  switch (kind) {
    case PresetKind::kWeightedAStar:
    case PresetKind::kARAStar:
      p.resolutions = {opt.resolution};
      p.anytime = kind == PresetKind::kARAStar;
      break;
    case PresetKind::kMHAStar:
    case PresetKind::kAnytimeMHAStar:
      p.resolutions = {opt.resolution};
      for (int f = 0; f < opt.num_families; ++f) p.heuristics.push_back({f, 1});
      p.anytime = kind == PresetKind::kAnytimeMHAStar;
      break;
    case PresetKind::kMRAStar: {
      const int f = opt.family.value_or(0);
      if (f < 0 || f >= opt.num_families) throw ContractViolation("MRA* family out of range");
      p.resolutions = all_resolutions();
      for (int r = 1; r <= opt.num_resolutions; ++r) p.heuristics.push_back({f, r});
      p.anytime = false;
      break;
    }
    case PresetKind::kAMRAStar:
      p.resolutions = all_resolutions();
      for (int r = 1; r <= opt.num_resolutions; ++r) {
        for (int f = 0; f < opt.num_families; ++f) p.heuristics.push_back({f, r});
      }
      p.anytime = true;
      break;
  }
  return p;
}

/// Instantiates a preset's queue layout from per-family evaluators.
template <typename State>
std::vector<HeuristicSpec<State>> build_heuristics(const Preset& preset,
                                                   const std::vector<HeuristicSpec<State>>& families) {
  std::vector<HeuristicSpec<State>> out;
  for (const auto& a : preset.heuristics) {
    const auto& fam = families.at(static_cast<std::size_t>(a.family));
    out.push_back({a.res, fam.evaluate, fam.name});
  }
  return out;
}

inline std::optional<PresetKind> parse_preset_kind(std::string_view s) {
  if (s == "wa" || s == "wastar" || s == "wA*") return PresetKind::kWeightedAStar;
  if (s == "ara" || s == "ARA*") return PresetKind::kARAStar;
  if (s == "mha" || s == "MHA*") return PresetKind::kMHAStar;
  if (s == "amha" || s == "A-MHA*") return PresetKind::kAnytimeMHAStar;
  if (s == "mra" || s == "MRA*") return PresetKind::kMRAStar;
  if (s == "amra" || s == "AMRA*") return PresetKind::kAMRAStar;
  return std::nullopt;
}

}  // namespace amra
