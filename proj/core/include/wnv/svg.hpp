#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "wnv/params.hpp"

namespace wnv {

struct Series {
  std::string label;
  std::string color;  ///< empty picks from the default palette
  std::vector<std::pair<double, double>> points;
};

struct AxisRange {
  double lo;
  double hi;
};

/// Data extent plus a 5% margin on each side; degenerate extents are widened
/// by 0.5 each way.
AxisRange plot_range(double min_v, double max_v);

/// (M, I_b) portrait with the two nullclines (green vertical, blue curve) and,
/// when a policy is present, dashed guard/reset lines at H_b and (1-q) H_b.
struct PhasePlot {
  Parameters params{};
  std::optional<ControlPolicy> policy;
  std::vector<Series> trajectories;
};

struct TimeseriesPlot {
  std::string y_label;
  std::vector<Series> series;  ///< (t, value)
};

struct BifurcationPlot {
  std::string param_name;
  std::vector<std::pair<double, double>> points;  ///< (parameter, tail value)
};

/// Self-contained deterministic SVG. Throws std::invalid_argument on empty
/// data before any file is created.
void emit_svg(const PhasePlot& data, const std::filesystem::path& path);
void emit_svg(const TimeseriesPlot& data, const std::filesystem::path& path);
void emit_svg(const BifurcationPlot& data, const std::filesystem::path& path);

}  // namespace wnv
