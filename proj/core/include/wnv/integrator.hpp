#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "wnv/model.hpp"
#include "wnv/params.hpp"

namespace wnv {

struct SimOptions {
  double rel_tol = 1e-10;        ///< embedded-pair relative tolerance
  double abs_tol = 1e-12;        ///< embedded-pair absolute tolerance
  double event_rel_tol = 1e-10;  ///< impulse located to |I_b - H_b| <= event_rel_tol * H_b
  double max_sample_dt = 0.0;    ///< cap on recorded sample spacing (0 = adaptive mesh only)
  double t_max = 1e4;            ///< time horizon, days
  long max_impulses = 100000;
};

struct Sample {
  double t;
  State s;
};

enum class SegmentEnd { impulse, t_max, converged };

struct TrajectorySegment {
  double t_start = 0.0;
  double t_end = 0.0;
  std::vector<Sample> samples;  ///< strictly increasing in t; last one is the end state
  SegmentEnd terminated_by = SegmentEnd::t_max;
  bool grazing = false;  ///< guard reached tangentially (|dI_b/dt| below the grazing scale)
};

/// One firing of the control: pre lies on the guard I_b = H_b (within event
/// tolerance), post is the exact reset ((1-p) pre.M, (1-q) H_b).
struct ImpulseEvent {
  double t;
  State pre;
  State post;
  int index = 0;  ///< 1-based ordinal
  bool grazing = false;
};

enum class RunEnd { t_max, max_impulses, converged };

struct Trajectory {
  Parameters params;
  std::optional<ControlPolicy> policy;
  State initial;
  std::vector<TrajectorySegment> segments;
  std::vector<ImpulseEvent> events;
  RunEnd ended_by = RunEnd::t_max;
};

/// Step-size underflow or other unrecoverable integration failure.
struct IntegratorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Analytic solution of the decoupled mosquito equation. For r = mu_m -
/// delta_m != 0 this is the rational form r M0 e^{rt} / (r + a M0 (e^{rt}-1))
/// with a = mu_m / K_m, evaluated in an overflow-safe arrangement; the same
/// expression covers r < 0 (decay to 0). For r = 0 it degenerates to
/// M0 / (1 + a M0 t).
double logistic_closed_form(double M0, double t, const Parameters& params);

/// Reset map ((1-p) M, (1-q) I_b). Usable standalone; no validation.
State apply_impulse(const State& s, const ControlPolicy& policy);

/// Integrates the flow over [t_start, t_end]. With a policy attached, stops at
/// the first upward crossing of I_b = H_b with M > 0 (terminated_by=impulse)
/// or, when the endemic point lies strictly below the guard, as soon as the
/// state has collapsed onto it (terminated_by=converged). Downward guard
/// crossings never fire. Requires s0.I_b < H_b when a policy is present;
/// simulate() applies the reset first for starts at or above the threshold.
TrajectorySegment integrate_segment(const State& s0, const Parameters& params,
                                    const std::optional<ControlPolicy>& policy, double t_end,
                                    double t_start = 0.0, const SimOptions& opts = {});

/// Alternates flow and reset until opts.t_max or opts.max_impulses. Initial
/// states with I_b >= H_b receive one reset at t = 0 before flowing.
Trajectory simulate(const State& s0, const Parameters& params,
                    const std::optional<ControlPolicy>& policy, const SimOptions& opts = {});

// --- un-reduced three-compartment model, used for cross-validation ---

struct FullState3D {
  double M;
  double S_b;
  double I_b;
};

struct Sample3D {
  double t;
  FullState3D s;
};

struct Segment3D {
  double t_start = 0.0;
  double t_end = 0.0;
  std::vector<Sample3D> samples;
  SegmentEnd terminated_by = SegmentEnd::t_max;
  bool grazing = false;
};

struct ImpulseEvent3D {
  double t;
  FullState3D pre;
  FullState3D post;  ///< ((1-p) M, S_b + q I_b, (1-q) I_b); bird total preserved exactly
  int index = 0;
  bool grazing = false;
};

struct Trajectory3D {
  Parameters params;
  std::optional<ControlPolicy> policy;
  FullState3D initial;
  std::vector<Segment3D> segments;
  std::vector<ImpulseEvent3D> events;
  RunEnd ended_by = RunEnd::t_max;
};

/// Requires S_b0 + I_b0 = N_b (the planar reduction assumes bird conservation).
Trajectory3D simulate_full_3d(const FullState3D& s0, const Parameters& params,
                              const std::optional<ControlPolicy>& policy,
                              const SimOptions& opts = {});

/// Cubic Hermite interpolation on a segment's stored mesh (derivatives are
/// recomputed from the field, so no slope storage is needed).
State state_at(const TrajectorySegment& seg, const Parameters& params, double t);
FullState3D state_at(const Segment3D& seg, const Parameters& params, double t);

/// Uniform resampling at spacing dt across all segments (used for CSV/plots).
std::vector<Sample> resample(const Trajectory& traj, double dt);
std::vector<Sample3D> resample(const Trajectory3D& traj, double dt);

}  // namespace wnv
