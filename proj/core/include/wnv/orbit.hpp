#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wnv/integrator.hpp"

namespace wnv {

/// One return-map evaluation: the flight from (x_in, (1-q) H_b) on the phase
/// set to the next post-impulse mosquito value.
struct PoincareSample {
  double x_in = 0.0;
  double x_out = 0.0;    ///< (1-p) * m_pre; meaningful only when hit
  double m_pre = 0.0;    ///< mosquito value at the guard; meaningful only when hit
  double ib_max = 0.0;   ///< largest infected-bird value seen along the flight
  double hit_time = 0.0; ///< flight duration, days; meaningful only when hit
  bool hit = false;
  bool grazing = false;
};

struct PeriodicOrbit {
  int order = 1;                     ///< 1 or 2
  std::vector<double> anchors;       ///< post-impulse M values, one per impulse of the cycle
  std::vector<double> flight_times;  ///< per-flight durations (size == order)
  double period = 0.0;               ///< sum of the flight times
  /// Dense (t, state) samples over one full cycle starting at t = 0 on the
  /// phase set. Order-2 orbits contain a repeated time at the interior reset
  /// (pre- and post-impulse rows).
  std::vector<Sample> orbit_samples;
};

struct StabilityReport {
  double kappa1 = 0.0;             ///< jump-map factor of the multiplier
  double integral_term = 0.0;      ///< exponent of the flow contraction factor
  double mu_analytic = 0.0;        ///< kappa1 * exp(integral_term)
  double mu_numeric = 0.0;         ///< central-difference slope of the return map
  double identity_residual = 0.0;  ///< |ln(1/(1-p)) - integral of the M log-derivative|
  bool stable = false;             ///< |mu_analytic| < 1
};

struct SingularKappa : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class CycleClass { order1, order2, undetermined, no_hit };
std::string_view to_string(CycleClass c);

struct IterateResult {
  std::vector<double> tail;     ///< the last n_record return-map values
  CycleClass cls = CycleClass::undetermined;
  std::vector<double> anchors;  ///< 1 or 2 entries when classified
  int iterations = 0;           ///< completed map evaluations
};

struct Order1Result {
  enum class Status { ok, no_hit, no_bracket };
  Status status = Status::no_hit;
  std::optional<PeriodicOrbit> orbit;
  std::optional<StabilityReport> stability;
  std::string detail;  ///< diagnostics for no_hit / no_bracket outcomes
};
std::string_view to_string(Order1Result::Status s);

struct OrbitOptions {
  double fixed_point_tol_rel = 1e-9;  ///< |F(x)-x| <= tol * K_m at accepted fixed points
  double cycle_tol_rel = 1e-7;        ///< tail classification tolerance, * K_m
  int order2_grid = 512;              ///< geometric scan resolution for 2-cycles
  int max_root_evals = 200;
  int orbit_mesh = 512;               ///< minimum samples per assembled orbit period
  SimOptions sim;                     ///< per-flight integration settings
};

PoincareSample poincare_map(double x, const Parameters& params, const ControlPolicy& policy,
                            const SimOptions& opts = {});

/// Iterates the return map and classifies the recorded tail as a 1-cycle,
/// an alternating 2-cycle, or undetermined. A flight that misses the guard
/// stops the iteration with CycleClass::no_hit.
IterateResult iterate_map(double x0, const Parameters& params, const ControlPolicy& policy,
                          int n_transient, int n_record, const OrbitOptions& opts = {});

/// Tail classifier used by iterate_map and the bifurcation scan.
CycleClass classify_tail(const std::vector<double>& tail, double tol,
                         std::vector<double>* anchors = nullptr);

/// Locates the order-1 cycle by bracketing F(x) - x on [1e-6 K_m, M*].
/// Throws std::domain_error when mu_m <= delta_m (no endemic dynamics).
Order1Result find_order1(const Parameters& params, const ControlPolicy& policy,
                         const OrbitOptions& opts = {});

/// Scans F(F(x)) - x for genuine 2-cycles (roots that are not order-1 fixed
/// points). Returns the cycle when found, nullopt otherwise.
std::optional<PeriodicOrbit> find_order2(const Parameters& params, const ControlPolicy& policy,
                                         const OrbitOptions& opts = {});

/// Evaluates the jump-times-flow multiplier of an order-1 orbit and
/// cross-checks it against the finite-difference slope of the return map.
/// The jump factor is evaluated at the pre-impulse point of the cycle.
/// Throws SingularKappa when the factor's denominator vanishes.
StabilityReport floquet_multiplier(const PeriodicOrbit& orbit, const Parameters& params,
                                   const ControlPolicy& policy, const OrbitOptions& opts = {});

/// Re-runs the cycle's flights from a known anchor with a dense capped mesh.
PeriodicOrbit assemble_orbit(double anchor, int order, const Parameters& params,
                             const ControlPolicy& policy, const OrbitOptions& opts = {});

/// Integral of M(t) over an orbit's samples: derivative-corrected trapezoid
/// with a Richardson error estimate (first = value, second = estimate).
std::pair<double, double> orbit_m_integral(const PeriodicOrbit& orbit, const Parameters& params);

}  // namespace wnv
