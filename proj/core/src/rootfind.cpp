#include "wnv/rootfind.hpp"

#include <cmath>
#include <stdexcept>

namespace wnv {

RootResult find_root_bracketed(const std::function<double(double)>& f, double lo, double hi,
                               double f_lo, double f_hi, double f_tol, double x_tol,
                               int max_evals) {
  if (!(lo < hi)) throw std::invalid_argument("find_root_bracketed: need lo < hi");
  if (!(f_lo == 0.0 || f_hi == 0.0 || (f_lo < 0.0) != (f_hi < 0.0)))
    throw std::invalid_argument("find_root_bracketed: endpoints do not bracket a sign change");

  RootResult best{std::abs(f_lo) < std::abs(f_hi) ? lo : hi,
                  std::abs(f_lo) < std::abs(f_hi) ? f_lo : f_hi, 0, false};
  if (std::abs(best.fx) <= f_tol) {
    best.converged = true;
    return best;
  }

  double a = lo, b = hi, fa = f_lo, fb = f_hi;
  int side = 0;  // Illinois damping: which endpoint was kept last
  for (int it = 0; it < max_evals; ++it) {
    double x;
    const double denom = fb - fa;
    if (denom != 0.0) {
      x = (a * fb - b * fa) / denom;
      // fall back to bisection when the secant point leaves or hugs the bracket
      if (!(x > a && x < b)) x = 0.5 * (a + b);
    } else {
      x = 0.5 * (a + b);
    }

    const double fx = f(x);
    best.evals = it + 1;
    if (std::abs(fx) < std::abs(best.fx)) {
      best.x = x;
      best.fx = fx;
    }
    if (std::abs(fx) <= f_tol) {
      best.converged = true;
      return best;
    }

    if ((fx < 0.0) == (fa < 0.0)) {
      a = x;
      fa = fx;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = x;
      fb = fx;
      if (side == +1) fa *= 0.5;
      side = +1;
    }
    if (b - a <= x_tol) {
      best.converged = true;
      return best;
    }
  }
  return best;
}

}  // namespace wnv
