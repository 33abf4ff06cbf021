#pragma once

#include <optional>
#include <string_view>

#include "wnv/params.hpp"

namespace wnv {

struct Derivatives {
  double dM_dt;
  double dIb_dt;
};

struct EquilibriumSet {
  State disease_free{0.0, 0.0};
  std::optional<State> endemic;  ///< present iff mu_m > delta_m
  bool endemic_exists = false;
};

/// Position of the infected-bird nullcline relative to the control lines,
/// plus the regime flags that decide which cycle structure the impulsive
/// system can exhibit.
struct RegimeReport {
  double M_star;  ///< endemic mosquito level (formula value; <= 0 when mu_m <= delta_m)
  double N_mq;    ///< nullcline M-coordinate on the reset line I_b = (1-q) H_b
  double N_mh;    ///< nullcline M-coordinate on the trigger line I_b = H_b
  bool case_a;               ///< (1-p) M* < N_mq
  bool case_b;               ///< (1-p) N_mh > N_mq
  bool threshold_reachable;  ///< H_b < I_b* (guard reached from below by the free flow)
};

struct EigenPair {
  double lambda1;  ///< growth-direction eigenvalue, mu_m - delta_m - 2 mu_m M / K_m
  double lambda2;  ///< infection-direction eigenvalue, -c beta_bm M / N_b - mu_b
};

/// Sign quadrants of the planar field (exact zeros report `boundary`).
enum class Region { omega1, omega2, omega3, omega4, boundary };
std::string_view to_string(Region r);

/// Right-hand side of the reduced planar model.
Derivatives vector_field(const State& s, const Parameters& params);

/// Divergence of the field rescaled by 1/M; constant and strictly negative,
/// which rules out closed orbits of the un-impulsed flow.
double dulac_divergence(const Parameters& params);

EquilibriumSet equilibria(const Parameters& params);

/// Eigenvalues of the (triangular) Jacobian at s, in (growth, infection) order.
EigenPair jacobian_eigenvalues(const Parameters& params, const State& s);

/// Throws std::invalid_argument when H_b >= N_b (nullcline denominator would
/// be nonpositive).
RegimeReport nullcline_markers(const Parameters& params, const ControlPolicy& policy);

/// Classifies s by the signs of (dM/dt, dI_b/dt). Zero decisions use an
/// absolute band of 1e-12 times each component's natural scale
/// (mu_m K_m and c beta_bm K_m respectively).
Region classify_region(const State& s, const Parameters& params);

/// Height of the dI_b/dt = 0 nullcline at mosquito level M.
double infected_nullcline(double M, const Parameters& params);

}  // namespace wnv
