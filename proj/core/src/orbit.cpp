#include "wnv/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wnv/rootfind.hpp"

namespace wnv {
namespace {

struct NoHitInterrupt {
  double x;
};

double mean(const double* begin, const double* end, std::ptrdiff_t stride) {
  double sum = 0.0;
  std::ptrdiff_t n = 0;
  for (const double* p = begin; p < end; p += stride, ++n) sum += *p;
  return n > 0 ? sum / static_cast<double>(n) : 0.0;
}

// Derivative-corrected trapezoid over one (t, M) mesh using only every
// `stride`-th point. Zero-width intervals (repeated reset times) contribute
// nothing.
double corrected_trapezoid(const std::vector<Sample>& ss, const Parameters& params,
                           std::size_t stride) {
  double acc = 0.0;
  std::size_t i = 0;
  while (i + 1 < ss.size()) {
    const std::size_t j = std::min(i + stride, ss.size() - 1);
    const double h = ss[j].t - ss[i].t;
    if (h > 0.0) {
      const double f0 = vector_field(ss[i].s, params).dM_dt;
      const double f1 = vector_field(ss[j].s, params).dM_dt;
      acc += 0.5 * h * (ss[i].s.M + ss[j].s.M) + h * h / 12.0 * (f0 - f1);
    }
    i = j;
  }
  return acc;
}

}  // namespace

std::string_view to_string(CycleClass c) {
  switch (c) {
    case CycleClass::order1: return "order1";
    case CycleClass::order2: return "order2";
    case CycleClass::undetermined: return "undetermined";
    case CycleClass::no_hit: return "no_hit";
  }
  return "?";
}

std::string_view to_string(Order1Result::Status s) {
  switch (s) {
    case Order1Result::Status::ok: return "ok";
    case Order1Result::Status::no_hit: return "no_hit";
    case Order1Result::Status::no_bracket: return "no_bracket";
  }
  return "?";
}

PoincareSample poincare_map(double x, const Parameters& params, const ControlPolicy& policy,
                            const SimOptions& opts) {
  if (!(x > 0.0)) throw std::invalid_argument("poincare_map: x must be positive");
  const State start{x, (1.0 - policy.q) * policy.H_b};
  const auto seg = integrate_segment(start, params, policy, opts.t_max, 0.0, opts);

  PoincareSample ps;
  ps.x_in = x;
  ps.hit = seg.terminated_by == SegmentEnd::impulse;
  double ib_max = start.I_b;
  for (const auto& smp : seg.samples) ib_max = std::max(ib_max, smp.s.I_b);
  ps.ib_max = ib_max;
  if (ps.hit) {
    ps.m_pre = seg.samples.back().s.M;
    ps.x_out = (1.0 - policy.p) * ps.m_pre;
    ps.hit_time = seg.t_end;
    ps.grazing = seg.grazing;
  }
  return ps;
}

CycleClass classify_tail(const std::vector<double>& tail, double tol,
                         std::vector<double>* anchors) {
  if (anchors) anchors->clear();
  if (tail.size() < 2) return CycleClass::undetermined;

  bool settled = true;
  for (std::size_t i = 1; i < tail.size(); ++i) {
    if (std::abs(tail[i] - tail[i - 1]) > tol) {
      settled = false;
      break;
    }
  }
  if (settled) {
    if (anchors) anchors->push_back(mean(tail.data(), tail.data() + tail.size(), 1));
    return CycleClass::order1;
  }

  if (tail.size() >= 4) {
    bool alternating = true;
    for (std::size_t i = 2; i < tail.size(); ++i) {
      if (std::abs(tail[i] - tail[i - 2]) > tol) {
        alternating = false;
        break;
      }
    }
    if (alternating) {
      const double* base = tail.data();
      const double* end = base + tail.size();
      const double a = mean(base, end, 2);
      const double b = mean(base + 1, end, 2);
      if (std::abs(a - b) > 10.0 * tol) {
        if (anchors) {
          anchors->push_back(a);
          anchors->push_back(b);
        }
        return CycleClass::order2;
      }
    }
  }
  return CycleClass::undetermined;
}

IterateResult iterate_map(double x0, const Parameters& params, const ControlPolicy& policy,
                          int n_transient, int n_record, const OrbitOptions& opts) {
  if (!(x0 > 0.0)) throw std::invalid_argument("iterate_map: x0 must be positive");
  IterateResult res;
  res.tail.reserve(static_cast<std::size_t>(std::max(n_record, 0)));
  double x = x0;
  const int total = n_transient + n_record;
  for (int i = 0; i < total; ++i) {
    const auto ps = poincare_map(x, params, policy, opts.sim);
    if (!ps.hit) {
      res.cls = CycleClass::no_hit;
      res.iterations = i;
      return res;
    }
    x = ps.x_out;
    if (i >= n_transient) res.tail.push_back(x);
  }
  res.iterations = total;
  res.cls = classify_tail(res.tail, opts.cycle_tol_rel * params.K_m, &res.anchors);
  return res;
}

PeriodicOrbit assemble_orbit(double anchor, int order, const Parameters& params,
                             const ControlPolicy& policy, const OrbitOptions& opts) {
  if (order < 1 || order > 2) throw std::invalid_argument("assemble_orbit: order must be 1 or 2");
  PeriodicOrbit orbit;
  orbit.order = order;
  double x = anchor;
  double t_offset = 0.0;
  for (int k = 0; k < order; ++k) {
    const auto probe = poincare_map(x, params, policy, opts.sim);
    if (!probe.hit) throw IntegratorError("assemble_orbit: flight missed the guard");
    SimOptions dense = opts.sim;
    dense.max_sample_dt = probe.hit_time / static_cast<double>(opts.orbit_mesh);
    const State start{x, (1.0 - policy.q) * policy.H_b};
    const auto seg = integrate_segment(start, params, policy, opts.sim.t_max, 0.0, dense);
    if (seg.terminated_by != SegmentEnd::impulse)
      throw IntegratorError("assemble_orbit: dense flight missed the guard");
    orbit.anchors.push_back(x);
    orbit.flight_times.push_back(seg.t_end);
    for (const auto& smp : seg.samples)
      orbit.orbit_samples.push_back({t_offset + smp.t, smp.s});
    t_offset += seg.t_end;
    x = (1.0 - policy.p) * seg.samples.back().s.M;
  }
  orbit.period = t_offset;
  return orbit;
}

std::pair<double, double> orbit_m_integral(const PeriodicOrbit& orbit, const Parameters& params) {
  if (orbit.orbit_samples.size() < 3)
    throw std::invalid_argument("orbit_m_integral: needs a dense orbit mesh");
  const double fine = corrected_trapezoid(orbit.orbit_samples, params, 1);
  const double coarse = corrected_trapezoid(orbit.orbit_samples, params, 2);
  return {fine, std::abs(fine - coarse) / 15.0};
}

StabilityReport floquet_multiplier(const PeriodicOrbit& orbit, const Parameters& params,
                                   const ControlPolicy& policy, const OrbitOptions& opts) {
  if (orbit.order != 1)
    throw std::invalid_argument("floquet_multiplier: needs an order-1 orbit");
  if (orbit.orbit_samples.size() < 3)
    throw std::invalid_argument("floquet_multiplier: needs dense orbit samples");

  const double T = orbit.period;
  const double m_pre = orbit.orbit_samples.back().s.M;  // pre-impulse point of the cycle
  const double cb = params.c * params.beta_bm;
  const double reset_level = (1.0 - policy.q) * policy.H_b;

  const double num =
      cb * (params.N_b - reset_level) * (1.0 - policy.p) * m_pre - params.mu_b * reset_level * params.N_b;
  const double den = cb * (params.N_b - policy.H_b) * m_pre - params.mu_b * policy.H_b * params.N_b;
  const double den_scale = std::max(1.0, std::abs(cb * (params.N_b - policy.H_b) * m_pre) +
                                             std::abs(params.mu_b * policy.H_b * params.N_b));
  if (std::abs(den) <= 1e-12 * den_scale)
    throw SingularKappa("floquet_multiplier: infection flow vanishes at the pre-impulse point");

  StabilityReport rep;
  rep.kappa1 = num / den;

  const auto [m_int, m_int_err] = orbit_m_integral(orbit, params);
  (void)m_int_err;
  rep.integral_term = -(params.mu_b * T + (params.mu_m / params.K_m + cb / params.N_b) * m_int);
  rep.mu_analytic = rep.kappa1 * std::exp(rep.integral_term);

  const double anchor = orbit.anchors.front();
  const double h = 1e-5 * anchor;
  const auto hi = poincare_map(anchor + h, params, policy, opts.sim);
  const auto lo = poincare_map(anchor - h, params, policy, opts.sim);
  if (!hi.hit || !lo.hit)
    throw IntegratorError("floquet_multiplier: slope probe missed the guard");
  rep.mu_numeric = (hi.x_out - lo.x_out) / (2.0 * h);

  rep.identity_residual =
      std::abs(std::log(1.0 / (1.0 - policy.p)) -
               ((params.mu_m - params.delta_m) * T - params.mu_m / params.K_m * m_int));
  rep.stable = std::abs(rep.mu_analytic) < 1.0;
  return rep;
}

Order1Result find_order1(const Parameters& params, const ControlPolicy& policy,
                         const OrbitOptions& opts) {
  if (!(params.mu_m > params.delta_m))
    throw std::domain_error("find_order1: requires mu_m > delta_m (mosquitoes die out otherwise)");

  const auto eq = equilibria(params);
  Order1Result res;
  if (!(policy.H_b < eq.endemic->I_b)) {
    res.status = Order1Result::Status::no_hit;
    res.detail = "guard unreachable: H_b >= I_b*";
    return res;
  }

  const double lo = 1e-6 * params.K_m;
  const double hi = eq.endemic->M;
  auto g = [&](double x) {
    const auto ps = poincare_map(x, params, policy, opts.sim);
    if (!ps.hit) throw NoHitInterrupt{x};
    return ps.x_out - x;
  };

  try {
    const double g_lo = g(lo);
    const double g_hi = g(hi);
    if (!(g_lo > 0.0) || !(g_hi < 0.0)) {
      std::ostringstream os;
      os << "bracket failed: g(" << lo << ")=" << g_lo << ", g(" << hi << ")=" << g_hi;
      res.status = Order1Result::Status::no_bracket;
      res.detail = os.str();
      return res;
    }
    const double f_tol = opts.fixed_point_tol_rel * params.K_m;
    const auto root =
        find_root_bracketed(g, lo, hi, g_lo, g_hi, f_tol, 1e-13 * params.K_m, opts.max_root_evals);
    if (!root.converged || std::abs(root.fx) > f_tol) {
      std::ostringstream os;
      os << "refinement stalled after " << root.evals << " evals, residual " << root.fx;
      res.status = Order1Result::Status::no_bracket;
      res.detail = os.str();
      return res;
    }
    res.orbit = assemble_orbit(root.x, 1, params, policy, opts);
    res.stability = floquet_multiplier(*res.orbit, params, policy, opts);
    res.status = Order1Result::Status::ok;
  } catch (const NoHitInterrupt& nh) {
    std::ostringstream os;
    os << "flight from x=" << nh.x << " missed the guard";
    res.status = Order1Result::Status::no_hit;
    res.detail = os.str();
  }
  return res;
}

std::optional<PeriodicOrbit> find_order2(const Parameters& params, const ControlPolicy& policy,
                                         const OrbitOptions& opts) {
  if (!(params.mu_m > params.delta_m))
    throw std::domain_error("find_order2: requires mu_m > delta_m");
  const auto eq = equilibria(params);
  if (!(policy.H_b < eq.endemic->I_b)) return std::nullopt;

  const double lo = 1e-6 * params.K_m;
  const double hi = eq.endemic->M;
  const int n = std::max(opts.order2_grid, 8);
  const double ratio = std::pow(hi / lo, 1.0 / (n - 1));
  const double fp_tol = opts.fixed_point_tol_rel * params.K_m;

  auto map_once = [&](double x) -> std::optional<double> {
    const auto ps = poincare_map(x, params, policy, opts.sim);
    if (!ps.hit) return std::nullopt;
    return ps.x_out;
  };
  auto h_of = [&](double x) -> std::optional<double> {
    const auto y = map_once(x);
    if (!y) return std::nullopt;
    const auto z = map_once(*y);
    if (!z) return std::nullopt;
    return *z - x;
  };

  std::vector<double> xs(n), hs(n);
  std::vector<bool> ok(n, false);
  for (int i = 0; i < n; ++i) {
    xs[i] = lo * std::pow(ratio, i);
    if (const auto v = h_of(xs[i])) {
      hs[i] = *v;
      ok[i] = true;
    }
  }

  for (int i = 0; i + 1 < n; ++i) {
    if (!ok[i] || !ok[i + 1]) continue;
    if (!(hs[i] == 0.0 || (hs[i] < 0.0) != (hs[i + 1] < 0.0))) continue;

    double xa;
    try {
      auto h_strict = [&](double x) {
        const auto v = h_of(x);
        if (!v) throw NoHitInterrupt{x};
        return *v;
      };
      const auto root = find_root_bracketed(h_strict, xs[i], xs[i + 1], hs[i], hs[i + 1], fp_tol,
                                            1e-13 * params.K_m, opts.max_root_evals);
      if (!root.converged || std::abs(root.fx) > fp_tol) continue;
      xa = root.x;
    } catch (const NoHitInterrupt&) {
      continue;
    }

    const auto xb = map_once(xa);
    if (!xb) continue;
    if (std::abs(*xb - xa) <= 10.0 * fp_tol) continue;  // an order-1 fixed point, not a 2-cycle
    return assemble_orbit(xa, 2, params, policy, opts);
  }
  return std::nullopt;
}

}  // namespace wnv
