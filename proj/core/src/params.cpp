#include "wnv/params.hpp"

namespace wnv {

std::optional<std::string> check(const Parameters& params) {
  auto positive = [](double v, const char* name) -> std::optional<std::string> {
    if (!(v > 0.0)) return std::string(name) + " must be strictly positive";
    return std::nullopt;
  };
  if (auto e = positive(params.mu_m, "mu_m")) return e;
  if (auto e = positive(params.K_m, "K_m")) return e;
  if (auto e = positive(params.delta_m, "delta_m")) return e;
  if (auto e = positive(params.mu_b, "mu_b")) return e;
  if (auto e = positive(params.c, "c")) return e;
  if (auto e = positive(params.N_b, "N_b")) return e;
  if (!(params.beta_bm > 0.0 && params.beta_bm <= 1.0))
    return std::string("beta_bm must lie in (0,1]");
  return std::nullopt;
}

std::optional<std::string> check(const ControlPolicy& policy, const Parameters& params) {
  if (!(policy.p > 0.0 && policy.p < 1.0)) return std::string("p must lie in (0,1)");
  if (!(policy.q > 0.0 && policy.q < 1.0)) return std::string("q must lie in (0,1)");
  if (!(policy.H_b > 0.0 && policy.H_b < params.N_b))
    return std::string("H_b must lie in (0, N_b)");
  return std::nullopt;
}

std::optional<std::string> check(const State& s, const Parameters& params) {
  if (!(s.M >= 0.0)) return std::string("M must be nonnegative");
  if (!(s.I_b >= 0.0 && s.I_b <= params.N_b))
    return std::string("I_b must lie in [0, N_b]");
  return std::nullopt;
}

}  // namespace wnv
