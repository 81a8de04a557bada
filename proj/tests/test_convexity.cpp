#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cdv/convexity.hpp"
#include "cdv/numerics.hpp"
#include "cdv/sturm.hpp"

using namespace cdv;

namespace {

SampledFunction sin_on_0_pi(int n = 256) {
  return SampledFunction::from_function(0.0, M_PI, n,
                                        [](double s) { return std::sin(s); });
}

}  // namespace

TEST_CASE("distributional check: equality case") {
  auto u = sin_on_0_pi();
  auto verdict = check_distributional(u, CoefficientFn::constant(1.0, M_PI));
  CHECK(verdict.holds);
  CHECK(std::abs(verdict.worst_residual) < 5e-5);  // h^2/12 floor
}

TEST_CASE("distributional check flags an inflated coefficient") {
  auto u = sin_on_0_pi();
  auto verdict = check_distributional(u, CoefficientFn::constant(1.1, M_PI));
  CHECK_FALSE(verdict.holds);
  CHECK(verdict.worst_residual == doctest::Approx(0.1).epsilon(0.05));
}

TEST_CASE("distributional check: constants against zero curvature") {
  auto u = SampledFunction::from_function(0.0, 1.0, 64,
                                          [](double) { return 1.0; });
  auto verdict = check_distributional(u, CoefficientFn::constant(0.0, 1.0));
  CHECK(verdict.holds);
  CHECK(verdict.worst_residual == doctest::Approx(0.0));
}

TEST_CASE("green form: linear functions with zero curvature are equalities") {
  auto u = SampledFunction::from_function(0.0, 1.0, 64,
                                          [](double s) { return 1.0 + 2.0 * s; });
  auto verdict = check_green(u, CoefficientFn::constant(0.0, 1.0), 1e-10);
  CHECK(verdict.holds);
  CHECK(std::abs(verdict.worst_residual) < 1e-12);
}

TEST_CASE("green form: sin saturates the kernel representation") {
  auto u = sin_on_0_pi(128);
  auto verdict = check_green(u, CoefficientFn::constant(1.0, M_PI), 1e-3);
  CHECK(verdict.holds);
}

TEST_CASE("green form detects a coefficient that is too large") {
  auto u = SampledFunction::from_function(-1.0, 1.0, 128,
                                          [](double s) { return 1.0 - s * s; });
  // u'' + 2u = 2(1 - s^2) - 2 <= 0 holds, while kappa = 3 fails near s = 0
  auto ok = check_green(u, CoefficientFn::constant(2.0, 2.0), 1e-3);
  CHECK(ok.holds);
  auto bad = check_green(u, CoefficientFn::constant(3.0, 2.0), 1e-3);
  CHECK_FALSE(bad.holds);
  CHECK(bad.worst_residual > 1e-2);
}

TEST_CASE("distortion form: generalized sin saturates the inequality") {
  const double L = M_PI - 0.1;
  auto kappa = CoefficientFn::constant(1.0, L);
  auto sol = solve_ivp(kappa, L, 0.0, 1.0);
  auto u = SampledFunction::from_function(0.0, L, 64,
                                          [&](double s) { return sol.eval(s); });
  auto verdict =
      check_distortion_form(u, kappa, GeodesicScope::AllGeodesics, 0.0, 1e-8);
  CHECK(verdict.holds);
  CHECK(std::abs(verdict.worst_residual) < 1e-8);
}

TEST_CASE("distortion form: positive constants past the conjugate point") {
  auto u = SampledFunction::from_function(0.0, 3.3, 48,
                                          [](double) { return 1.0; });
  auto verdict = check_distortion_form(u, CoefficientFn::constant(1.0, 3.3),
                                       GeodesicScope::AllGeodesics);
  CHECK_FALSE(verdict.holds);
  CHECK(verdict.rhs_infinite);
  // restricted to short geodesics the constant is fine for kappa <= 0
  auto short_ok = check_distortion_form(u, CoefficientFn::constant(-1.0, 3.3),
                                        GeodesicScope::ShortGeodesics, 1.0);
  CHECK(short_ok.holds);
}

TEST_CASE("distortion form: the zero function holds vacuously") {
  auto u = SampledFunction::from_function(0.0, 3.3, 32,
                                          [](double) { return 0.0; });
  auto verdict = check_distortion_form(u, CoefficientFn::constant(5.0, 3.3),
                                       GeodesicScope::AllGeodesics);
  CHECK(verdict.holds);
}

TEST_CASE("kappa-N convexity of constants and saturating potentials") {
  // constant potential: u is constant, fine for kappa <= 0
  auto f_const = SampledFunction::from_function(0.0, 2.0, 32,
                                                [](double) { return 2.0; });
  CHECK(check_kappa_N_convex(f_const, CoefficientFn::constant(-1.0, 2.0), 2.0)
            .holds);
  CHECK_FALSE(
      check_kappa_N_convex(f_const, CoefficientFn::constant(1.0, 2.0), 2.0)
          .holds);

  // f = -N log s_{kappa/N} turns the saturating solution into equality
  const double N = 2.0, L = 3.0;
  auto kappa = CoefficientFn::constant(1.0, L);
  auto sol = solve_ivp(kappa.scaled(1.0 / N), L, 0.0, 1.0);
  auto f = SampledFunction::from_function(
      0.1, L, 64, [&](double s) { return -N * std::log(sol.eval(s)); });
  auto verdict = check_kappa_N_convex(f, kappa.restricted(0.1, L), N, 1e-7);
  CHECK(verdict.holds);
  CHECK(std::abs(verdict.worst_residual) < 1e-7);
}

TEST_CASE("kappa-N convexity rejects a concave dip") {
  auto f = SampledFunction::from_function(
      0.0, 2.0, 64, [](double s) { return -(s - 1.0) * (s - 1.0); });
  auto verdict = check_kappa_N_convex(f, CoefficientFn::constant(0.0, 2.0), 1.0);
  CHECK_FALSE(verdict.holds);
}

TEST_CASE("potentials may be infinite, u maps to zero there") {
  auto f = SampledFunction::from_function(0.0, 1.0, 32, [](double s) {
    return s > 0.9 ? std::numeric_limits<double>::infinity() : 0.0;
  });
  CHECK_NOTHROW(check_kappa_N_convex(f, CoefficientFn::constant(-1.0, 1.0), 2.0));
}

TEST_CASE("verdicts are invariant under positive scaling of u") {
  auto kappa = CoefficientFn::table({0.0, 1.0, 2.0}, {0.5, -1.0, 0.8});
  auto base = SampledFunction::from_function(0.0, 2.0, 64, [](double s) {
    return 1.0 + 0.3 * std::sin(2.0 * s);
  });
  for (double scale : {0.1, 7.0}) {
    SampledFunction scaled = base;
    for (double& v : scaled.values) v *= scale;
    auto v1 = check_distributional(base, kappa);
    auto v2 = check_distributional(scaled, kappa);
    CHECK(v1.holds == v2.holds);
    CHECK(v1.worst_residual == doctest::Approx(v2.worst_residual).epsilon(1e-10));
    auto d1 = check_distortion_form(base, kappa, GeodesicScope::AllGeodesics);
    auto d2 = check_distortion_form(scaled, kappa, GeodesicScope::AllGeodesics);
    CHECK(d1.holds == d2.holds);
    CHECK(d1.worst_residual == doctest::Approx(d2.worst_residual).epsilon(1e-10));
  }
}

TEST_CASE("the three forms agree away from the tolerance band") {
  Rng rng(501);
  int decided = 0;
  for (int trial = 0; trial < 30; ++trial) {
    // random positive u and coefficient; the sign of max(u'' + kappa u)
    // is the ground truth when it clears a margin
    const double w = rng.uniform(0.5, 2.0);
    const double amp = rng.uniform(0.1, 0.6);
    const double phase = rng.uniform(0.0, 6.28);
    const double kconst = rng.uniform(-2.0, 2.0);
    auto fn = [&](double s) { return 1.0 + amp * std::sin(w * s + phase); };
    auto u = SampledFunction::from_function(0.0, 2.0, 96, fn);
    auto kappa = CoefficientFn::constant(kconst, 2.0);

    // oracle margin via the closed-form second derivative; integrated forms
    // see a violation at scale margin * theta^2, so "clearly violated" means
    // the margin stays above 0.2 across a window, not just at one point
    auto margin_at = [&](double s) {
      return -amp * w * w * std::sin(w * s + phase) + kconst * fn(s);
    };
    double margin_max = -HUGE_VAL;
    for (int i = 0; i <= 200; ++i)
      margin_max = std::max(margin_max, margin_at(2.0 * i / 200.0));
    bool sustained = false;
    for (double c = 0.0; c + 0.8 <= 2.0; c += 0.05) {
      double low = HUGE_VAL;
      for (int i = 0; i <= 40; ++i) low = std::min(low, margin_at(c + 0.8 * i / 40.0));
      if (low > 0.2) sustained = true;
    }
    bool expect;
    if (margin_max < -0.2) {
      expect = true;  // clearly holds
    } else if (sustained) {
      expect = false;  // clearly violated for every form
    } else {
      continue;
    }
    CHECK(check_distributional(u, kappa, 1e-3).holds == expect);
    CHECK(check_green(u, kappa, 5e-3).holds == expect);
    CHECK(check_distortion_form(u, kappa, GeodesicScope::AllGeodesics, 0.0, 5e-3)
              .holds == expect);
    ++decided;
  }
  CHECK(decided > 8);
}

TEST_CASE("relaxing the coefficient preserves a passing distortion verdict") {
  // stay short of the conjugate length so no sigma verdict is borderline
  const double L = M_PI - 0.1;
  auto u = SampledFunction::from_function(0.0, L, 64,
                                          [](double s) { return std::sin(s); });
  auto kappa = CoefficientFn::constant(1.0, L);
  REQUIRE(check_distortion_form(u, kappa, GeodesicScope::AllGeodesics, 0.0, 1e-6)
              .holds);
  for (double delta : {0.1, 0.5, 1.5}) {
    CHECK(check_distortion_form(u, kappa.shifted(-delta),
                                GeodesicScope::AllGeodesics, 0.0, 1e-6)
              .holds);
  }
}

TEST_CASE("domain mismatches are rejected") {
  auto u = sin_on_0_pi(32);
  CHECK_THROWS_AS(check_distributional(u, CoefficientFn::constant(1.0, 1.0)),
                  Error);
}
