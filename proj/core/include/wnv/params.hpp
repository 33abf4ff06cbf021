#pragma once

#include <optional>
#include <string>

namespace wnv {

/// Biological constants of the mosquito-bird transmission model.
/// Units are days and individuals throughout.
struct Parameters {
  double mu_m;     ///< mosquito per-capita birth rate (1/day)
  double K_m;      ///< environmental carrying capacity of mosquitoes
  double delta_m;  ///< natural death rate of mosquitoes (1/day)
  double mu_b;     ///< recruitment/death rate of birds (1/day)
  double c;        ///< biting rate of mosquitoes (1/day)
  double beta_bm;  ///< transmission probability mosquito -> bird
  double N_b;      ///< total bird population
};

/// Threshold-triggered impulse: cull a fraction p of mosquitoes and cure a
/// fraction q of infected birds whenever the infected-bird count reaches H_b.
struct ControlPolicy {
  double p;    ///< mosquito culling fraction, in (0,1)
  double q;    ///< infected-bird cure fraction, in (0,1)
  double H_b;  ///< infected-bird trigger threshold, in (0, N_b)
};

struct State {
  double M;    ///< mosquito count
  double I_b;  ///< infected-bird count
};

/// Returns an error message naming the offending field, or nullopt when valid.
/// Published empirical ranges are documentation, not validation: only
/// positivity and fraction bounds are enforced.
std::optional<std::string> check(const Parameters& params);
std::optional<std::string> check(const ControlPolicy& policy, const Parameters& params);
std::optional<std::string> check(const State& s, const Parameters& params);

}  // namespace wnv
