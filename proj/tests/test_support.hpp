#pragma once

#include <random>

#include "wnv/params.hpp"

namespace testsup {

// Baseline constant block shared by all scenario families
// (K_m = 1000, mu_b = 0.01, c = 0.09, beta_bm = 0.8, N_b = 400).
inline wnv::Parameters with_growth(double mu_m, double delta_m) {
  return {mu_m, 1000.0, delta_m, 0.01, 0.09, 0.8, 400.0};
}

inline wnv::Parameters strong_growth() { return with_growth(0.537, 0.035); }
inline wnv::Parameters moderate_growth() { return with_growth(0.357, 0.035); }
inline wnv::Parameters slow_growth() { return with_growth(0.06, 0.04); }
inline wnv::Parameters slower_growth() { return with_growth(0.06, 0.05); }

inline wnv::ControlPolicy light_control() { return {0.15, 0.45, 250.0}; }
inline wnv::ControlPolicy heavy_control() { return {0.8, 0.3, 250.0}; }
inline wnv::ControlPolicy heavy_control_low_cure() { return {0.8, 0.25, 250.0}; }

struct Rng {
  std::mt19937_64 gen{0x5eed1234u};
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }
};

// Draw from the published empirical ranges; N_b has no published range and is
// drawn over a plausible flock size.
inline wnv::Parameters random_params(Rng& rng, bool require_endemic) {
  for (;;) {
    wnv::Parameters p{rng.uniform(0.036, 42.5), rng.uniform(1e5, 1e6),
                      rng.uniform(0.016, 0.07), rng.uniform(1e-4, 1e-3),
                      rng.uniform(0.09, 0.16),  rng.uniform(0.80, 0.96),
                      rng.uniform(100.0, 5000.0)};
    if (!require_endemic || p.mu_m > p.delta_m) return p;
  }
}

inline wnv::ControlPolicy random_policy(Rng& rng, const wnv::Parameters& params) {
  return {rng.uniform(0.01, 0.99), rng.uniform(0.01, 0.99),
          rng.uniform(0.01, 0.99) * params.N_b};
}

}  // namespace testsup
