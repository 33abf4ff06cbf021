#pragma once

#include <functional>

namespace wnv {

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int evals = 0;
  bool converged = false;
};

/// Bracketed scalar root refinement (Illinois-damped regula falsi with a
/// bisection safeguard). Requires f(lo) and f(hi) of opposite sign; stops
/// once |f| <= f_tol or the bracket width falls below x_tol.
RootResult find_root_bracketed(const std::function<double(double)>& f, double lo, double hi,
                               double f_lo, double f_hi, double f_tol, double x_tol,
                               int max_evals = 200);

}  // namespace wnv
