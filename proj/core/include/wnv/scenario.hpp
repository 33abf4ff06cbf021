#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wnv/config.hpp"
#include "wnv/orbit.hpp"
#include "wnv/presets.hpp"
#include "wnv/scan.hpp"

namespace wnv {

std::string_view to_string(RunEnd e);

struct ScenarioSummary {
  EquilibriumSet eq;
  std::optional<RegimeReport> regime;  ///< present when the config carries a policy
  std::size_t event_count = 0;
  RunEnd ended_by = RunEnd::t_max;
  std::optional<Order1Result> orbit;  ///< cycle search result, when attempted
  Trajectory trajectory;
  std::vector<std::filesystem::path> written;
};

/// Simulates the configured scenario, searches for the order-1 cycle when the
/// guard is reachable, and writes the requested artifacts as
/// <stem>.csv / <stem>_phase.svg / <stem>_timeseries.svg / <stem>_report.txt.
ScenarioSummary run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir,
                             const std::string& stem, const SimOptions& sim_base = {});

/// Flat key=value summary: the config echo followed by every derived quantity
/// (equilibria, regime flags, event count, cycle and stability findings).
std::string summary_report(const std::string& stem, const ScenarioConfig& cfg,
                           const ScenarioSummary& summary);

struct PresetRun {
  std::vector<std::pair<std::string, ScenarioSummary>> runs;  ///< label -> summary
  std::optional<ScanResult> scan;
  std::vector<std::filesystem::path> written;
};

/// Runs a named preset: every variant as a scenario (multi-variant presets
/// add a <name>_compare.svg overlay of the infected-bird series), or the
/// bifurcation sweep for scan presets.
PresetRun run_preset(const Preset& preset, const std::filesystem::path& out_dir,
                     const SimOptions& sim_base = {}, int workers = 1);

}  // namespace wnv
