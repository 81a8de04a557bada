#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cdv/numerics.hpp"
#include "cdv/sturm.hpp"
#include "oracles.hpp"

using namespace cdv;

namespace {

CoefficientFn random_piecewise(Rng& rng, double length, double lo, double hi,
                               int knots = 5) {
  std::vector<double> ts(knots), ks(knots);
  for (int i = 0; i < knots; ++i) {
    ts[i] = length * i / (knots - 1);
    ks[i] = rng.uniform(lo, hi);
  }
  return CoefficientFn::table(std::move(ts), std::move(ks));
}

double max_abs_gap(const SinSolution& sol,
                   const std::function<double(double)>& ref, int samples = 400) {
  double worst = 0.0;
  const double L = sol.length();
  for (int i = 0; i <= samples; ++i) {
    const double t = L * i / samples;
    worst = std::max(worst, std::abs(sol.eval(t) - ref(t)));
  }
  return worst;
}

}  // namespace

TEST_CASE("zero coefficient integrates to a line") {
  auto kappa = CoefficientFn::constant(0.0, 1.0);
  SinSolution sol = solve_ivp(kappa, 1.0, 0.0, 1.0);
  CHECK(max_abs_gap(sol, [](double t) { return t; }) < 1e-12);
}

TEST_CASE("unit coefficient reproduces sin") {
  auto kappa = CoefficientFn::constant(1.0, M_PI);
  SinSolution sol = solve_ivp(kappa, M_PI, 0.0, 1.0);
  CHECK(max_abs_gap(sol, [](double t) { return std::sin(t); }) < 1e-8);
}

TEST_CASE("inverse-square coefficient matches the log-sin span") {
  // kappa(t) = (alpha^2 + 1/4) / (A - t)^2 solved by
  // sqrt(A-t) {sin, cos}(alpha log(A-t)); fit the two constants to the
  // initial conditions and compare pointwise.
  const double alpha = 1.0, A = 2.0, L = 1.5;
  auto kappa = CoefficientFn::power_decreasing(alpha * alpha + 0.25, A, -2.0, L);
  const double u0 = 0.0, v0 = 1.0;

  auto f1 = [&](double t) {
    const double s = A - t;
    return std::sqrt(s) * std::sin(alpha * std::log(s));
  };
  auto f2 = [&](double t) {
    const double s = A - t;
    return std::sqrt(s) * std::cos(alpha * std::log(s));
  };
  auto df1 = [&](double t) {
    const double s = A - t;
    return -(0.5 * std::sin(alpha * std::log(s)) + alpha * std::cos(alpha * std::log(s))) /
           std::sqrt(s);
  };
  auto df2 = [&](double t) {
    const double s = A - t;
    return -(0.5 * std::cos(alpha * std::log(s)) - alpha * std::sin(alpha * std::log(s))) /
           std::sqrt(s);
  };
  // solve [f1 f2; f1' f2'] c = (u0, v0) at t = 0
  const double a11 = f1(0), a12 = f2(0), a21 = df1(0), a22 = df2(0);
  const double det = a11 * a22 - a12 * a21;
  const double c1 = (u0 * a22 - a12 * v0) / det;
  const double c2 = (a11 * v0 - u0 * a21) / det;

  SinSolution sol = solve_ivp(kappa, L, u0, v0);
  CHECK(max_abs_gap(sol, [&](double t) { return c1 * f1(t) + c2 * f2(t); }) < 1e-6);
}

TEST_CASE("first zero of constant-coefficient sin") {
  for (double K : {0.5, 1.0, 4.0}) {
    const double window = 1.2 * M_PI / std::sqrt(K);
    auto kappa = CoefficientFn::constant(K, window);
    SinSolution sol = generalized_sin(kappa, window);
    REQUIRE(sol.first_zero.has_value());
    CHECK(std::abs(*sol.first_zero - M_PI / std::sqrt(K)) <
          1e-9 * (M_PI / std::sqrt(K)));
  }
}

TEST_CASE("nonpositive coefficients never vanish") {
  for (double K : {0.0, -1.0, -4.0}) {
    auto kappa = CoefficientFn::constant(K, 6.0);
    SinSolution sol = generalized_sin(kappa, 6.0);
    CHECK_FALSE(sol.first_zero.has_value());
  }
}

TEST_CASE("piecewise-linear first zero agrees with a dense fixed-step oracle") {
  // ramp from 0 to 4 over [0, pi]
  auto kappa = CoefficientFn::table({0.0, M_PI}, {0.0, 4.0});
  SinSolution sol = generalized_sin(kappa, M_PI);
  REQUIRE(sol.first_zero.has_value());
  auto ref = oracle::rk4_first_zero([](double t) { return 4.0 * t / M_PI; },
                                    M_PI, 1 << 17);
  REQUIRE(ref.has_value());
  CHECK(std::abs(*sol.first_zero - *ref) < 1e-8);
}

TEST_CASE("generalized cos closed forms") {
  auto c0 = generalized_cos(CoefficientFn::constant(0.0, 2.0), 2.0);
  CHECK(max_abs_gap(c0, [](double) { return 1.0; }) < 1e-10);
  auto c1 = generalized_cos(CoefficientFn::constant(1.0, M_PI), M_PI);
  CHECK(max_abs_gap(c1, [](double t) { return std::cos(t); }) < 1e-8);
  CHECK(c1.eval(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  auto cm = generalized_cos(CoefficientFn::constant(-1.0, 2.0), 2.0);
  CHECK(max_abs_gap(cm, [](double t) { return std::cosh(t); }) < 1e-8);
}

TEST_CASE("sturm comparison verdicts") {
  auto k0 = CoefficientFn::constant(0.0, 3.0);
  auto k1 = CoefficientFn::constant(1.0, 3.0);
  auto r = verify_sturm_comparison(k0, k1, 3.0);
  CHECK(r.holds);
  CHECK(r.worst_gap >= -1e-9);

  auto eq = verify_sturm_comparison(k1, k1, 3.0);
  CHECK(eq.holds);
  CHECK(std::abs(eq.worst_gap) < 1e-10);

  CHECK_THROWS_AS(verify_sturm_comparison(k1, k0, 3.0), Error);
  // s_{kappa2} vanishing inside the window
  auto big = CoefficientFn::constant(4.0, 3.0);
  CHECK_THROWS_AS(verify_sturm_comparison(k1, big, 3.0), Error);
}

TEST_CASE("sturm comparison over random ordered pairs") {
  Rng rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    auto lo = random_piecewise(rng, 1.0, -4.0, 4.0);
    auto hi = lo.shifted(rng.uniform(0.0, 2.0));
    try {
      auto r = verify_sturm_comparison(lo, hi, 1.0, 1e-7);
      CHECK(r.holds);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::PositivityViolated);
    }
  }
}

TEST_CASE("linearity of the IVP") {
  auto kappa = CoefficientFn::table({0.0, 0.4, 1.0}, {2.0, -1.0, 0.5});
  SinSolution base = solve_ivp(kappa, 1.0, 0.3, 1.0);
  for (double a : {-2.0, 0.5, 10.0}) {
    SinSolution scaled = solve_ivp(kappa, 1.0, a * 0.3, a * 1.0);
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double t = i / 200.0;
      worst = std::max(worst, std::abs(scaled.eval(t) - a * base.eval(t)));
    }
    CHECK(worst < 1e-9 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("reparametrized coefficient reproduces the rescaled solution") {
  auto kappa = CoefficientFn::table({0.0, 1.0, 3.0}, {1.0, 3.0, -2.0});
  SinSolution direct = solve_ivp(kappa, 3.0, 0.0, 1.0);
  for (double theta : {0.3, 1.0, 2.7}) {
    auto re = kappa.reparametrized(theta);
    SinSolution unit = solve_ivp(re, 1.0, 0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double s = i / 100.0;
      worst = std::max(worst,
                       std::abs(unit.eval(s) - direct.eval(theta * s) / theta));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("oscillation: larger coefficients vanish no later") {
  Rng rng(99);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto lo = random_piecewise(rng, 4.0, 0.5, 3.0);
    auto hi = lo.shifted(rng.uniform(0.0, 1.5));
    SinSolution s_lo = generalized_sin(lo, 4.0);
    if (!s_lo.first_zero) continue;
    SinSolution s_hi = generalized_sin(hi, 4.0);
    REQUIRE(s_hi.first_zero.has_value());
    CHECK(*s_hi.first_zero <= *s_lo.first_zero + 1e-9);
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("solution responds O(delta) to coefficient perturbations") {
  auto kappa = CoefficientFn::table({0.0, 0.5, 1.0}, {1.0, -2.0, 3.0});
  SinSolution base = solve_ivp(kappa, 1.0, 0.0, 1.0);
  std::vector<double> logd, loge;
  for (double delta : {1e-2, 1e-3, 1e-4}) {
    SinSolution pert = solve_ivp(kappa.shifted(delta), 1.0, 0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double t = i / 200.0;
      worst = std::max(worst, std::abs(pert.eval(t) - base.eval(t)));
    }
    logd.push_back(std::log(delta));
    loge.push_back(std::log(worst));
  }
  const double slope = fit_slope(logd, loge);
  CHECK(slope == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("wronskian of two independent solutions stays constant") {
  auto kappa = CoefficientFn::table({0.0, 0.7, 2.0}, {-1.0, 2.5, 0.3});
  SinSolution u1 = solve_ivp(kappa, 2.0, 0.0, 1.0);
  SinSolution u2 = solve_ivp(kappa, 2.0, 1.0, 0.0);
  for (int i = 0; i <= 100; ++i) {
    const double t = 2.0 * i / 100.0;
    const double w = u2.eval(t) * u1.eval_deriv(t) - u2.eval_deriv(t) * u1.eval(t);
    CHECK(w == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("power-law singularities inside the domain are rejected") {
  CHECK_THROWS_AS(CoefficientFn::power_decreasing(1.0, 1.0, -2.0, 1.5), Error);
  CHECK_THROWS_AS(CoefficientFn::power_increasing(1.0, -0.5, -2.0, 1.0), Error);
}

TEST_CASE("coefficient reversal is an exact involution") {
  auto kappa = CoefficientFn::table({0.0, 0.25, 1.0}, {1.0, -3.0, 2.0});
  auto twice = kappa.reversed().reversed();
  for (int i = 0; i <= 64; ++i) {
    const double t = i / 64.0;
    CHECK(twice.eval(t) == doctest::Approx(kappa.eval(t)).epsilon(1e-14));
  }
  auto pow = CoefficientFn::power_decreasing(2.0, 3.0, -2.0, 1.0);
  for (int i = 0; i <= 64; ++i) {
    const double t = i / 64.0;
    CHECK(pow.reversed().eval(t) == doctest::Approx(pow.eval(1.0 - t)));
    CHECK(pow.reversed().reversed().eval(t) == doctest::Approx(pow.eval(t)));
  }
}
