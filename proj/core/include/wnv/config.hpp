#pragma once

#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>

#include "wnv/params.hpp"

namespace wnv {

enum class OutputKind { trajectory_csv, phase_svg, timeseries_svg, report };
std::string_view to_string(OutputKind k);

struct ScenarioConfig {
  Parameters params{};
  std::optional<ControlPolicy> policy;
  State initial{};
  double t_max = 1e4;
  double resample_dt = 1.0;
  std::set<OutputKind> outputs{OutputKind::trajectory_csv, OutputKind::report};
};

struct ConfigError : std::runtime_error {
  int line;  ///< 1-based; 0 when not tied to a specific line
  explicit ConfigError(const std::string& msg, int line_number = 0);
};

/// Plain-text key=value scenario file. One pair per line, `#` starts a
/// comment. Keys: mu_m, K_m, delta_m, mu_b, c, beta_bm, N_b (required),
/// M0, I_b0 (required), p, q, H_b (all three or none), t_max, resample_dt,
/// outputs (optional). Unknown and duplicate keys are rejected with their
/// line number.
ScenarioConfig parse_config(const std::filesystem::path& path);
ScenarioConfig parse_config_text(std::string_view text);

/// Canonical key=value serialization (shared with the report format).
std::string to_key_values(const ScenarioConfig& cfg);

}  // namespace wnv
