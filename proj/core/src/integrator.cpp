#include "wnv/integrator.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "wnv/rootfind.hpp"

namespace odeint = boost::numeric::odeint;

namespace wnv {
namespace {

template <std::size_t N>
using VecN = std::array<double, N>;

struct GuardSpec {
  std::size_t ib_index;    // state component carrying I_b
  double level;            // H_b
  double event_tol;        // absolute tolerance on |I_b - H_b| at the located hit
  double grazing_scale;    // |dI_b/dt| below this at the hit flags a tangency
};

template <std::size_t N>
struct SegmentRun {
  std::vector<std::pair<double, VecN<N>>> samples;
  SegmentEnd end = SegmentEnd::t_max;
  bool grazing = false;
  double t_end = 0.0;
  VecN<N> x_end{};
};

template <std::size_t N>
void push_sample(std::vector<std::pair<double, VecN<N>>>& out, double t, const VecN<N>& x) {
  if (!out.empty() && !(t > out.back().first)) return;
  out.push_back({t, x});
}

// Records interpolated mesh points over (t_from, t_to] so that consecutive
// recorded samples are no further apart than cap (0 disables densification).
template <std::size_t N, class Stepper>
void append_mesh(std::vector<std::pair<double, VecN<N>>>& out, Stepper& stepper, double t_from,
                 double t_to, double cap, const VecN<N>& x_to) {
  if (cap > 0.0) {
    const double span = t_to - t_from;
    const int pieces = static_cast<int>(std::ceil(span / cap));
    for (int i = 1; i < pieces; ++i) {
      const double t = t_from + span * static_cast<double>(i) / pieces;
      VecN<N> x;
      stepper.calc_state(t, x);
      push_sample(out, t, x);
    }
  }
  push_sample(out, t_to, x_to);
}

// Shared flow driver for the planar and the un-reduced model: one adaptive
// dopri5 dense-output pass with sign-checked guard detection, bracketed event
// refinement on the interpolant, and optional early exit once the state has
// collapsed onto an attractor below the guard.
template <std::size_t N, class Sys, class Converged>
SegmentRun<N> run_segment(Sys sys, const VecN<N>& x0, double t0, double t1,
                          const std::optional<GuardSpec>& guard, Converged converged,
                          const SimOptions& opts) {
  if (!(t1 > t0)) throw std::invalid_argument("integrate: need t_end > t_start");

  SegmentRun<N> run;
  auto stepper =
      odeint::make_dense_output(opts.abs_tol, opts.rel_tol, odeint::runge_kutta_dopri5<VecN<N>>());
  stepper.initialize(x0, t0, std::min(0.01, t1 - t0));
  push_sample(run.samples, t0, x0);

  double g_prev = guard ? x0[guard->ib_index] - guard->level : 0.0;

  while (stepper.current_time() < t1) {
    const double t_before = stepper.current_time();
    try {
      stepper.do_step(sys);
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "integration stalled at t=" << t_before << ": " << e.what();
      throw IntegratorError(os.str());
    }
    if (!(stepper.current_time() > t_before))
      throw IntegratorError("step size underflow");

    // window actually owned by this segment
    const double t_win = std::min(stepper.current_time(), t1);
    VecN<N> x_win;
    if (t_win < stepper.current_time())
      stepper.calc_state(t_win, x_win);
    else
      x_win = stepper.current_state();

    if (guard) {
      const double g_win = x_win[guard->ib_index] - guard->level;
      if (g_prev < 0.0 && g_win >= 0.0) {
        double t_hit = t_win;
        VecN<N> x_hit = x_win;
        if (g_win > 0.0) {
          auto g_of_t = [&](double t) {
            VecN<N> x;
            stepper.calc_state(t, x);
            return x[guard->ib_index] - guard->level;
          };
          const auto root =
              find_root_bracketed(g_of_t, t_before, t_win, g_prev, g_win, guard->event_tol,
                                  1e-14 * std::max(1.0, std::abs(t_win)));
          t_hit = root.x;
          stepper.calc_state(t_hit, x_hit);
        }
        if (x_hit[0] > 0.0) {
          VecN<N> dxdt;
          sys(x_hit, dxdt, t_hit);
          run.grazing = std::abs(dxdt[guard->ib_index]) < guard->grazing_scale;
          append_mesh(run.samples, stepper, t_before, t_hit, opts.max_sample_dt, x_hit);
          run.end = SegmentEnd::impulse;
          run.t_end = t_hit;
          run.x_end = x_hit;
          return run;
        }
      }
      g_prev = g_win;
    }

    append_mesh(run.samples, stepper, t_before, t_win, opts.max_sample_dt, x_win);

    if (converged && converged(x_win)) {
      run.end = SegmentEnd::converged;
      run.t_end = t_win;
      run.x_end = x_win;
      return run;
    }
  }

  run.end = SegmentEnd::t_max;
  run.t_end = t1;
  run.x_end = run.samples.back().second;
  return run;
}

struct PlanarSystem {
  Parameters params;
  void operator()(const VecN<2>& x, VecN<2>& dxdt, double) const {
    const auto d = vector_field({x[0], x[1]}, params);
    dxdt[0] = d.dM_dt;
    dxdt[1] = d.dIb_dt;
  }
};

struct FullSystem {
  Parameters params;
  void operator()(const VecN<3>& x, VecN<3>& dxdt, double) const {
    const double birds = x[1] + x[2];
    const double force = params.c * params.beta_bm * x[1] / birds * x[0];
    dxdt[0] = params.mu_m * x[0] * (1.0 - x[0] / params.K_m) - params.delta_m * x[0];
    dxdt[1] = params.mu_b * birds - force - params.mu_b * x[1];
    dxdt[2] = force - params.mu_b * x[2];
  }
};

GuardSpec make_guard(const ControlPolicy& policy, const Parameters& params, std::size_t ib_index,
                     const SimOptions& opts) {
  return {ib_index, policy.H_b, opts.event_rel_tol * policy.H_b,
          1e-10 * params.mu_b * policy.H_b};
}

// Early NoHit exit: once the state sits within 1e-9 of an endemic point that
// lies strictly below the guard, the flow can never reach it again.
std::function<bool(const VecN<2>&)> make_converged_check(const Parameters& params,
                                                         const std::optional<ControlPolicy>& policy) {
  if (!policy) return nullptr;
  const auto eq = equilibria(params);
  if (!eq.endemic_exists || !(eq.endemic->I_b < policy->H_b * (1.0 - 1e-12))) return nullptr;
  const double m_star = eq.endemic->M;
  const double ib_star = eq.endemic->I_b;
  const double tol_m = 1e-9 * params.K_m;
  const double tol_i = 1e-9 * params.N_b;
  return [m_star, ib_star, tol_m, tol_i](const VecN<2>& x) {
    return std::abs(x[0] - m_star) <= tol_m && std::abs(x[1] - ib_star) <= tol_i;
  };
}

TrajectorySegment to_segment(SegmentRun<2>&& run, double t_start) {
  TrajectorySegment seg;
  seg.t_start = t_start;
  seg.t_end = run.t_end;
  seg.terminated_by = run.end;
  seg.grazing = run.grazing;
  seg.samples.reserve(run.samples.size());
  for (const auto& [t, x] : run.samples) seg.samples.push_back({t, State{x[0], x[1]}});
  return seg;
}

Segment3D to_segment(SegmentRun<3>&& run, double t_start) {
  Segment3D seg;
  seg.t_start = t_start;
  seg.t_end = run.t_end;
  seg.terminated_by = run.end;
  seg.grazing = run.grazing;
  seg.samples.reserve(run.samples.size());
  for (const auto& [t, x] : run.samples) seg.samples.push_back({t, FullState3D{x[0], x[1], x[2]}});
  return seg;
}

double hermite(double t, double t0, double y0, double f0, double t1, double y1, double f1) {
  const double h = t1 - t0;
  const double th = (t - t0) / h;
  const double th2 = th * th;
  const double th3 = th2 * th;
  return (2.0 * th3 - 3.0 * th2 + 1.0) * y0 + (th3 - 2.0 * th2 + th) * h * f0 +
         (-2.0 * th3 + 3.0 * th2) * y1 + (th3 - th2) * h * f1;
}

}  // namespace

double logistic_closed_form(double M0, double t, const Parameters& params) {
  if (M0 == 0.0) return 0.0;
  const double r = params.mu_m - params.delta_m;
  const double a = params.mu_m / params.K_m;
  if (r == 0.0) return M0 / (1.0 + a * M0 * t);
  if (r > 0.0) {
    const double e = std::exp(-r * t);  // overflow-safe for large r t
    return r * M0 / (r * e + a * M0 * (1.0 - e));
  }
  const double e = std::exp(r * t);
  return r * M0 * e / (r + a * M0 * (e - 1.0));
}

State apply_impulse(const State& s, const ControlPolicy& policy) {
  return {(1.0 - policy.p) * s.M, (1.0 - policy.q) * s.I_b};
}

TrajectorySegment integrate_segment(const State& s0, const Parameters& params,
                                    const std::optional<ControlPolicy>& policy, double t_end,
                                    double t_start, const SimOptions& opts) {
  if (policy && !(s0.I_b < policy->H_b))
    throw std::invalid_argument(
        "integrate_segment: start must lie below the threshold; simulate() applies the reset "
        "first");
  std::optional<GuardSpec> guard;
  if (policy) guard = make_guard(*policy, params, 1, opts);
  auto run = run_segment<2>(PlanarSystem{params}, {s0.M, s0.I_b}, t_start, t_end, guard,
                            make_converged_check(params, policy), opts);
  return to_segment(std::move(run), t_start);
}

Trajectory simulate(const State& s0, const Parameters& params,
                    const std::optional<ControlPolicy>& policy, const SimOptions& opts) {
  Trajectory traj{params, policy, s0, {}, {}, RunEnd::t_max};
  State s = s0;
  int ordinal = 0;

  if (policy && s0.I_b >= policy->H_b) {
    const State post = apply_impulse(s0, *policy);
    traj.events.push_back({0.0, s0, post, ++ordinal, false});
    s = post;
    if (ordinal >= opts.max_impulses) {
      traj.ended_by = RunEnd::max_impulses;
      return traj;
    }
  }

  std::optional<GuardSpec> guard;
  if (policy) guard = make_guard(*policy, params, 1, opts);
  const auto converged = make_converged_check(params, policy);

  double t = 0.0;
  while (true) {
    auto run =
        run_segment<2>(PlanarSystem{params}, {s.M, s.I_b}, t, opts.t_max, guard, converged, opts);
    const SegmentEnd end = run.end;
    const bool grazing = run.grazing;
    const double t_hit = run.t_end;
    const State x_end{run.x_end[0], run.x_end[1]};
    traj.segments.push_back(to_segment(std::move(run), t));

    if (end == SegmentEnd::impulse) {
      const State post{(1.0 - policy->p) * x_end.M, (1.0 - policy->q) * policy->H_b};
      traj.events.push_back({t_hit, x_end, post, ++ordinal, grazing});
      s = post;
      t = t_hit;
      if (ordinal >= opts.max_impulses) {
        traj.ended_by = RunEnd::max_impulses;
        return traj;
      }
      if (t >= opts.t_max) {
        traj.ended_by = RunEnd::t_max;
        return traj;
      }
      continue;
    }
    traj.ended_by = end == SegmentEnd::converged ? RunEnd::converged : RunEnd::t_max;
    return traj;
  }
}

Trajectory3D simulate_full_3d(const FullState3D& s0, const Parameters& params,
                              const std::optional<ControlPolicy>& policy, const SimOptions& opts) {
  if (std::abs(s0.S_b + s0.I_b - params.N_b) > 1e-9 * params.N_b)
    throw std::invalid_argument("simulate_full_3d: requires S_b0 + I_b0 = N_b");

  Trajectory3D traj{params, policy, s0, {}, {}, RunEnd::t_max};
  FullState3D s = s0;
  int ordinal = 0;

  if (policy && s0.I_b >= policy->H_b) {
    const FullState3D post{(1.0 - policy->p) * s0.M, s0.S_b + policy->q * s0.I_b,
                           (1.0 - policy->q) * s0.I_b};
    traj.events.push_back({0.0, s0, post, ++ordinal, false});
    s = post;
    if (ordinal >= opts.max_impulses) {
      traj.ended_by = RunEnd::max_impulses;
      return traj;
    }
  }

  std::optional<GuardSpec> guard;
  if (policy) guard = make_guard(*policy, params, 2, opts);

  double t = 0.0;
  while (true) {
    auto run = run_segment<3>(FullSystem{params}, {s.M, s.S_b, s.I_b}, t, opts.t_max, guard,
                              std::function<bool(const VecN<3>&)>(nullptr), opts);
    const SegmentEnd end = run.end;
    const bool grazing = run.grazing;
    const double t_hit = run.t_end;
    const FullState3D x_end{run.x_end[0], run.x_end[1], run.x_end[2]};
    traj.segments.push_back(to_segment(std::move(run), t));

    if (end == SegmentEnd::impulse) {
      // the same located I_b feeds both bird components, so their sum is
      // preserved to roundoff across the jump
      const FullState3D post{(1.0 - policy->p) * x_end.M, x_end.S_b + policy->q * x_end.I_b,
                             (1.0 - policy->q) * x_end.I_b};
      traj.events.push_back({t_hit, x_end, post, ++ordinal, grazing});
      s = post;
      t = t_hit;
      if (ordinal >= opts.max_impulses) {
        traj.ended_by = RunEnd::max_impulses;
        return traj;
      }
      if (t >= opts.t_max) {
        traj.ended_by = RunEnd::t_max;
        return traj;
      }
      continue;
    }
    traj.ended_by = end == SegmentEnd::converged ? RunEnd::converged : RunEnd::t_max;
    return traj;
  }
}

State state_at(const TrajectorySegment& seg, const Parameters& params, double t) {
  const auto& ss = seg.samples;
  if (ss.empty()) throw std::invalid_argument("state_at: empty segment");
  if (t <= ss.front().t) return ss.front().s;
  if (t >= ss.back().t) return ss.back().s;
  auto it = std::upper_bound(ss.begin(), ss.end(), t,
                             [](double v, const Sample& smp) { return v < smp.t; });
  const Sample& hi = *it;
  const Sample& lo = *(it - 1);
  const auto f0 = vector_field(lo.s, params);
  const auto f1 = vector_field(hi.s, params);
  return {hermite(t, lo.t, lo.s.M, f0.dM_dt, hi.t, hi.s.M, f1.dM_dt),
          hermite(t, lo.t, lo.s.I_b, f0.dIb_dt, hi.t, hi.s.I_b, f1.dIb_dt)};
}

FullState3D state_at(const Segment3D& seg, const Parameters& params, double t) {
  const auto& ss = seg.samples;
  if (ss.empty()) throw std::invalid_argument("state_at: empty segment");
  if (t <= ss.front().t) return ss.front().s;
  if (t >= ss.back().t) return ss.back().s;
  auto it = std::upper_bound(ss.begin(), ss.end(), t,
                             [](double v, const Sample3D& smp) { return v < smp.t; });
  const Sample3D& hi = *it;
  const Sample3D& lo = *(it - 1);
  FullSystem sys{params};
  VecN<3> f0, f1;
  sys({lo.s.M, lo.s.S_b, lo.s.I_b}, f0, lo.t);
  sys({hi.s.M, hi.s.S_b, hi.s.I_b}, f1, hi.t);
  return {hermite(t, lo.t, lo.s.M, f0[0], hi.t, hi.s.M, f1[0]),
          hermite(t, lo.t, lo.s.S_b, f0[1], hi.t, hi.s.S_b, f1[1]),
          hermite(t, lo.t, lo.s.I_b, f0[2], hi.t, hi.s.I_b, f1[2])};
}

namespace {

template <class Traj, class SampleT>
std::vector<SampleT> resample_impl(const Traj& traj, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("resample: dt must be positive");
  std::vector<SampleT> out;
  if (traj.segments.empty()) return out;
  const double t0 = traj.segments.front().t_start;
  const double t_end = traj.segments.back().t_end;
  if ((t_end - t0) / dt > 5e7)
    throw std::invalid_argument("resample: grid would exceed 50M points");
  std::size_t seg_idx = 0;
  for (long k = 0;; ++k) {
    const double t = t0 + dt * static_cast<double>(k);
    if (t > t_end * (1.0 + 1e-15) + 1e-300) break;
    while (seg_idx + 1 < traj.segments.size() && t > traj.segments[seg_idx].t_end) ++seg_idx;
    out.push_back({t, state_at(traj.segments[seg_idx], traj.params, t)});
  }
  if (out.empty() || out.back().t < t_end) {
    const auto& last = traj.segments.back();
    out.push_back({t_end, last.samples.back().s});
  }
  return out;
}

}  // namespace

std::vector<Sample> resample(const Trajectory& traj, double dt) {
  return resample_impl<Trajectory, Sample>(traj, dt);
}

std::vector<Sample3D> resample(const Trajectory3D& traj, double dt) {
  return resample_impl<Trajectory3D, Sample3D>(traj, dt);
}

}  // namespace wnv
