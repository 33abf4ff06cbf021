#pragma once

#include <string>
#include <vector>

#include "wnv/config.hpp"

namespace wnv {

struct PresetVariant {
  std::string label;  ///< suffix for emitted files; empty for single-variant presets
  ScenarioConfig config;
};

struct ScanSpec {
  std::string key;  ///< one of p, q, H_b
  double lo;
  double hi;
  int n;
};

/// A named, zero-configuration experiment. Multi-variant presets overlay
/// their infected-bird series in one comparison plot; scan presets run a
/// bifurcation sweep instead of plain simulations.
struct Preset {
  std::string name;
  std::string summary;
  std::vector<PresetVariant> variants;
  std::optional<ScanSpec> scan;
};

const std::vector<Preset>& presets();
const Preset* find_preset(std::string_view name);

}  // namespace wnv
