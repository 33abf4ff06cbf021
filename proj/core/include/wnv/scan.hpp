#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wnv/config.hpp"
#include "wnv/orbit.hpp"

namespace wnv {

struct ScanCell {
  double value = 0.0;  ///< swept parameter at this cell
  CycleClass cls = CycleClass::undetermined;
  std::vector<double> tail;      ///< post-impulse M tail (n_record entries when ok)
  std::vector<double> pre_tail;  ///< matching pre-impulse M at the guard
  std::vector<double> ib_max;    ///< infected-bird flight maxima
  double period = 0.0;           ///< filled for order-1 and order-2 cells
  double mu = 0.0;               ///< |multiplier|, order-1 cells only
  std::string status = "ok";     ///< ok, no_hit, or an error note
};

struct ScanResult {
  std::string swept_key;  ///< p, q, or H_b
  std::vector<double> grid;
  std::vector<ScanCell> cells;
  int n_transient = 200;
  int n_record = 50;
};

/// Sweeps one control parameter over an inclusive grid. Each cell seeds the
/// return map by flowing the base initial state to its first impulse, then
/// iterates and classifies the tail. Per-cell failures are recorded in the
/// cell status; they never abort the sweep. Cells run concurrently on up to
/// `workers` threads; results are assembled in grid order.
ScanResult bifurcation_scan(const ScenarioConfig& base, const std::string& key, double lo,
                            double hi, int n, int n_transient = 200, int n_record = 50,
                            int workers = 1);

/// Header row plus exactly n_record rows per cell; failed cells keep their
/// row count with empty value fields and the status token.
void write_scan_csv(std::ostream& os, const ScanResult& res);

}  // namespace wnv
