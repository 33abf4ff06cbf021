#include "wnv/model.hpp"

#include <cmath>
#include <stdexcept>

namespace wnv {

Derivatives vector_field(const State& s, const Parameters& params) {
  const double dM = params.mu_m * s.M * (1.0 - s.M / params.K_m) - params.delta_m * s.M;
  const double dIb =
      params.c * params.beta_bm * (1.0 - s.I_b / params.N_b) * s.M - params.mu_b * s.I_b;
  return {dM, dIb};
}

double dulac_divergence(const Parameters& params) {
  return -params.mu_m / params.K_m - params.c * params.beta_bm / params.N_b - params.mu_b;
}

EquilibriumSet equilibria(const Parameters& params) {
  EquilibriumSet eq;
  eq.disease_free = {0.0, 0.0};
  const double growth = params.mu_m - params.delta_m;
  eq.endemic_exists = growth > 0.0;
  if (eq.endemic_exists) {
    const double cb = params.c * params.beta_bm;
    const double m_star = params.K_m * growth / params.mu_m;
    const double ib_star = cb * params.K_m * params.N_b * growth /
                           (cb * params.K_m * growth + params.mu_m * params.mu_b * params.N_b);
    eq.endemic = State{m_star, ib_star};
  }
  return eq;
}

EigenPair jacobian_eigenvalues(const Parameters& params, const State& s) {
  // The Jacobian is lower triangular: the M equation does not depend on I_b.
  const double l1 = params.mu_m - params.delta_m - 2.0 * params.mu_m * s.M / params.K_m;
  const double l2 = -params.c * params.beta_bm * s.M / params.N_b - params.mu_b;
  return {l1, l2};
}

RegimeReport nullcline_markers(const Parameters& params, const ControlPolicy& policy) {
  if (!(policy.H_b < params.N_b))
    throw std::invalid_argument("nullcline_markers: H_b must be below N_b");
  const double cb = params.c * params.beta_bm;
  const double reset_level = (1.0 - policy.q) * policy.H_b;
  RegimeReport rep;
  rep.N_mq = params.mu_b * params.N_b * reset_level / (cb * (params.N_b - reset_level));
  rep.N_mh = params.mu_b * params.N_b * policy.H_b / (cb * (params.N_b - policy.H_b));
  rep.M_star = params.K_m * (params.mu_m - params.delta_m) / params.mu_m;
  rep.case_a = (1.0 - policy.p) * rep.M_star < rep.N_mq;
  rep.case_b = (1.0 - policy.p) * rep.N_mh > rep.N_mq;
  const auto eq = equilibria(params);
  rep.threshold_reachable = eq.endemic_exists && policy.H_b < eq.endemic->I_b;
  return rep;
}

Region classify_region(const State& s, const Parameters& params) {
  const auto d = vector_field(s, params);
  const double tol_m = 1e-12 * params.mu_m * params.K_m;
  const double tol_i = 1e-12 * params.c * params.beta_bm * params.K_m;
  if (std::abs(d.dM_dt) <= tol_m || std::abs(d.dIb_dt) <= tol_i) return Region::boundary;
  if (d.dM_dt > 0.0) return d.dIb_dt < 0.0 ? Region::omega1 : Region::omega2;
  return d.dIb_dt > 0.0 ? Region::omega3 : Region::omega4;
}

double infected_nullcline(double M, const Parameters& params) {
  const double cb = params.c * params.beta_bm;
  return cb * M * params.N_b / (cb * M + params.mu_b * params.N_b);
}

std::string_view to_string(Region r) {
  switch (r) {
    case Region::omega1: return "omega1";
    case Region::omega2: return "omega2";
    case Region::omega3: return "omega3";
    case Region::omega4: return "omega4";
    case Region::boundary: return "boundary";
  }
  return "?";
}

}  // namespace wnv
