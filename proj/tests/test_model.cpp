#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "wnv/model.hpp"

using namespace wnv;
using namespace testsup;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

TEST_CASE("vector field vanishes at the origin") {
  for (const auto& p : {strong_growth(), slow_growth(), slower_growth()}) {
    const auto d = vector_field({0.0, 0.0}, p);
    CHECK(d.dM_dt == 0.0);
    CHECK(d.dIb_dt == 0.0);
  }
}

TEST_CASE("vector field matches hand arithmetic") {
  // mu_m M (1 - M/K_m) - delta_m M and c beta_bm (1 - I_b/N_b) M - mu_b I_b
  // at M=100, I_b=50: 0.06*100*0.9 - 0.04*100 = 1.4 and
  // 0.072*0.875*100 - 0.01*50 = 5.8
  const auto d = vector_field({100.0, 50.0}, slow_growth());
  CHECK(rel_err(d.dM_dt, 1.4) < 1e-12);
  CHECK(rel_err(d.dIb_dt, 5.8) < 1e-12);
}

TEST_CASE("endemic point zeroes the field") {
  const auto p = strong_growth();
  const auto eq = equilibria(p);
  REQUIRE(eq.endemic_exists);
  const auto d = vector_field(*eq.endemic, p);
  CHECK(std::abs(d.dM_dt) <= 1e-9 * p.mu_m * p.K_m);
  CHECK(std::abs(d.dIb_dt) <= 1e-9 * p.c * p.beta_bm * p.K_m);
}

TEST_CASE("equilibria closed forms") {
  SUBCASE("no endemic point when the mosquito population cannot grow") {
    auto p = slow_growth();
    p.mu_m = 0.03;
    p.delta_m = 0.05;
    const auto eq = equilibria(p);
    CHECK_FALSE(eq.endemic_exists);
    CHECK_FALSE(eq.endemic.has_value());
  }
  SUBCASE("exact balance counts as no endemic point") {
    auto p = slow_growth();
    p.delta_m = p.mu_m;
    CHECK_FALSE(equilibria(p).endemic_exists);
  }
  SUBCASE("strong growth block") {
    const auto eq = equilibria(strong_growth());
    REQUIRE(eq.endemic_exists);
    CHECK(eq.endemic->M == doctest::Approx(934.823).epsilon(1e-5));
    CHECK(eq.endemic->I_b == doctest::Approx(377.5618928).epsilon(1e-8));
  }
  SUBCASE("slow growth block has simple rational values") {
    const auto eq = equilibria(slow_growth());
    REQUIRE(eq.endemic_exists);
    CHECK(rel_err(eq.endemic->M, 1000.0 / 3.0) < 1e-12);
    CHECK(rel_err(eq.endemic->I_b, 2400.0 / 7.0) < 1e-12);
  }
}

TEST_CASE("jacobian eigenvalues") {
  const auto p = strong_growth();
  SUBCASE("saddle at the origin under growth") {
    const auto ev = jacobian_eigenvalues(p, {0.0, 0.0});
    CHECK(ev.lambda1 == p.mu_m - p.delta_m);
    CHECK(ev.lambda2 == -p.mu_b);
    CHECK(ev.lambda1 > 0.0);
    CHECK(ev.lambda2 < 0.0);
  }
  SUBCASE("stable node at the endemic point") {
    const auto eq = equilibria(p);
    const auto ev = jacobian_eigenvalues(p, *eq.endemic);
    CHECK(ev.lambda1 < 0.0);
    CHECK(ev.lambda2 < 0.0);
  }
  SUBCASE("degenerate balance") {
    auto pb = p;
    pb.delta_m = pb.mu_m;
    const auto ev = jacobian_eigenvalues(pb, {0.0, 0.0});
    CHECK(ev.lambda1 == 0.0);
    CHECK(ev.lambda2 == -pb.mu_b);
  }
}

TEST_CASE("dulac divergence") {
  CHECK(rel_err(dulac_divergence(strong_growth()), -0.010717) < 1e-12);

  SUBCASE("negative for every valid parameter draw") {
    Rng rng;
    for (int i = 0; i < 500; ++i) {
      const auto p = random_params(rng, false);
      CHECK(dulac_divergence(p) < 0.0);
    }
  }
  SUBCASE("vanishing growth rate leaves the infection terms") {
    auto p = strong_growth();
    p.mu_m = 1e-15;
    const double want = -p.c * p.beta_bm / p.N_b - p.mu_b;
    CHECK(rel_err(dulac_divergence(p), want) < 1e-9);
  }
}

TEST_CASE("nullcline markers") {
  SUBCASE("light control: reset line marker sits left of the culled trigger marker") {
    const auto rep = nullcline_markers(moderate_growth(), light_control());
    CHECK(rep.N_mq == doctest::Approx(29.10).epsilon(1e-3));
    CHECK(rep.N_mh == doctest::Approx(92.59).epsilon(1e-3));
    CHECK((1.0 - 0.15) * rep.N_mh == doctest::Approx(78.70).epsilon(1e-3));
    CHECK(rep.case_b);
    CHECK_FALSE(rep.case_a);
    CHECK(rep.threshold_reachable);
  }
  SUBCASE("heavy culling with slower growth lands in the contraction case") {
    const auto rep = nullcline_markers(slower_growth(), heavy_control_low_cure());
    CHECK(rep.M_star == doctest::Approx(166.67).epsilon(1e-3));
    CHECK(rep.N_mq == doctest::Approx(49.0196).epsilon(1e-4));
    CHECK((1.0 - 0.8) * rep.M_star == doctest::Approx(33.33).epsilon(1e-3));
    CHECK(rep.case_a);
  }
  SUBCASE("full cure pushes the reset marker to zero") {
    auto policy = light_control();
    policy.q = 0.999999;
    const auto rep = nullcline_markers(moderate_growth(), policy);
    CHECK(rep.N_mq < 1e-3);
    CHECK_FALSE(rep.case_a);
  }
  SUBCASE("threshold at or above the whole flock is rejected") {
    auto policy = light_control();
    policy.H_b = 400.0;
    CHECK_THROWS_AS(nullcline_markers(moderate_growth(), policy), std::invalid_argument);
  }
}

TEST_CASE("marker ordering and reachability equivalence over random draws") {
  Rng rng;
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_params(rng, true);
    const auto policy = random_policy(rng, p);
    const auto rep = nullcline_markers(p, policy);
    CHECK(rep.N_mq > 0.0);
    CHECK(rep.N_mq < rep.N_mh);
    const auto eq = equilibria(p);
    // the trigger line is reachable exactly when its nullcline marker sits
    // left of the endemic mosquito level
    CHECK(rep.threshold_reachable == (policy.H_b < eq.endemic->I_b));
    CHECK(rep.threshold_reachable == (rep.N_mh < eq.endemic->M));
  }
}

TEST_CASE("region classification") {
  const auto p = strong_growth();
  const auto eq = equilibria(p);

  SUBCASE("endemic point reports boundary") {
    CHECK(classify_region(*eq.endemic, p) == Region::boundary);
  }
  SUBCASE("growing mosquitoes, declining infections") {
    CHECK(classify_region({100.0, 300.0}, p) == Region::omega1);
  }
  SUBCASE("just past the endemic point both components decline") {
    CHECK(classify_region({eq.endemic->M + 1.0, eq.endemic->I_b + 1.0}, p) == Region::omega4);
  }
  SUBCASE("vertical isocline reports boundary") {
    CHECK(classify_region({eq.endemic->M, 123.0}, p) == Region::boundary);
  }
  SUBCASE("agrees with a fresh field evaluation on random states") {
    Rng rng;
    for (int i = 0; i < 500; ++i) {
      const State s{rng.uniform(0.0, p.K_m), rng.uniform(0.0, p.N_b)};
      const auto region = classify_region(s, p);
      const auto d = vector_field(s, p);
      if (region == Region::boundary) continue;
      const bool m_up = d.dM_dt > 0.0;
      const bool i_up = d.dIb_dt > 0.0;
      Region want;
      if (m_up)
        want = i_up ? Region::omega2 : Region::omega1;
      else
        want = i_up ? Region::omega3 : Region::omega4;
      CHECK(region == want);
    }
  }
}

TEST_CASE("parameter and state validation") {
  auto p = strong_growth();
  CHECK_FALSE(check(p).has_value());
  p.beta_bm = 1.2;
  CHECK(check(p).has_value());
  p = strong_growth();
  p.K_m = 0.0;
  CHECK(check(p).has_value());

  const auto good = strong_growth();
  CHECK_FALSE(check(light_control(), good).has_value());
  CHECK(check(ControlPolicy{0.0, 0.5, 100.0}, good).has_value());
  CHECK(check(ControlPolicy{0.5, 0.5, 500.0}, good).has_value());
  CHECK_FALSE(check(State{10.0, 10.0}, good).has_value());
  CHECK(check(State{-1.0, 10.0}, good).has_value());
  CHECK(check(State{10.0, 401.0}, good).has_value());
}
