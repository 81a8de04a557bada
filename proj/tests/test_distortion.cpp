#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cdv/distortion.hpp"
#include "cdv/numerics.hpp"
#include "oracles.hpp"

using namespace cdv;

namespace {

CoefficientFn random_table(Rng& rng, double length, double lo, double hi,
                           int knots = 5) {
  std::vector<double> ts(knots), ks(knots);
  for (int i = 0; i < knots; ++i) {
    ts[i] = length * i / (knots - 1);
    ks[i] = rng.uniform(lo, hi);
  }
  return CoefficientFn::table(std::move(ts), std::move(ks));
}

double tau_const_oracle(double K, double N, double t, double theta) {
  return std::pow(t, 1.0 / N) *
         std::pow(oracle::sigma_const(K / (N - 1.0), t, theta), (N - 1.0) / N);
}

}  // namespace

TEST_CASE("extended arithmetic conventions") {
  auto inf = ExtendedNonNeg::infinity();
  auto zero = ExtendedNonNeg::finite(0.0);
  CHECK((0.0 * inf).value() == 0.0);
  CHECK((2.0 * inf).is_inf());
  CHECK((zero * inf).value() == 0.0);
  CHECK(inf.pow(0.5).is_inf());
  CHECK((ExtendedNonNeg::finite(3.0) + inf).is_inf());
  CHECK(ExtendedNonNeg::finite(7.0) < inf);
  CHECK_FALSE(inf < inf);
}

TEST_CASE("sigma of the flat coefficient is t") {
  auto k0 = CoefficientFn::constant(0.0, 2.0);
  for (double t : {0.1, 0.33, 0.9})
    CHECK(sigma(k0, t, 2.0).finite_value() == doctest::Approx(t).epsilon(1e-12));
}

TEST_CASE("sigma matches the constant-curvature closed form") {
  auto k1 = CoefficientFn::constant(1.0, 2.0);
  for (double t : {0.25, 0.5, 0.75}) {
    CHECK(std::abs(sigma(k1, t, 2.0).finite_value() -
                   oracle::sigma_const(1.0, t, 2.0)) < 1e-8);
  }
  auto km = CoefficientFn::constant(-3.0, 2.0);
  for (double t : {0.25, 0.5, 0.75}) {
    CHECK(std::abs(sigma(km, t, 2.0).finite_value() -
                   oracle::sigma_const(-3.0, t, 2.0)) < 1e-8);
  }
}

TEST_CASE("sigma endpoints are exact on the finite branch") {
  auto k = CoefficientFn::constant(2.0, 1.0);
  CHECK(sigma(k, 0.0, 1.0).finite_value() == 0.0);
  CHECK(sigma(k, 1.0, 1.0).finite_value() == 1.0);
}

TEST_CASE("sigma past the first zero is infinite") {
  auto k = CoefficientFn::constant(M_PI * M_PI, 1.2);
  CHECK(sigma(k, 0.5, 1.2).is_inf());
}

TEST_CASE("a zero within tolerance of theta is borderline") {
  // s vanishes exactly at theta: neither verdict is certifiable
  auto k = CoefficientFn::constant(M_PI * M_PI, 1.0);
  CHECK_THROWS_AS(sigma(k, 0.5, 1.0), Error);
  try {
    sigma(k, 0.5, 1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Borderline);
  }
}

TEST_CASE("sigma at theta = 0 takes the limit value t") {
  auto k = CoefficientFn::constant(5.0, 1.0);
  CHECK(sigma(k, 0.3, 0.0).finite_value() == doctest::Approx(0.3));
}

TEST_CASE("sigma_kN divides the coefficient by N") {
  auto k = CoefficientFn::constant(2.0, 1.5);
  for (double t : {0.25, 0.5, 0.75}) {
    CHECK(std::abs(sigma_kN(k, 4.0, t, 1.5).finite_value() -
                   oracle::sigma_const(0.5, t, 1.5)) < 1e-8);
  }
  auto neg = CoefficientFn::constant(-2.0, 1.5);
  CHECK(std::abs(sigma_kN(neg, 2.0, 0.5, 1.5).finite_value() -
                 oracle::sigma_const(-1.0, 0.5, 1.5)) < 1e-8);
}

TEST_CASE("tau closed forms and conventions") {
  auto k0 = CoefficientFn::constant(0.0, 1.0);
  for (double N : {1.0, 2.0, 5.0})
    CHECK(tau(k0, N, 0.4, 1.0).finite_value() == doctest::Approx(0.4).epsilon(1e-10));

  auto kpos = CoefficientFn::constant(2.0, 1.0);
  CHECK(tau(kpos, 1.0, 0.5, 1.0).is_inf());
  CHECK(tau(kpos, 1.0, 0.5, 0.0).finite_value() == doctest::Approx(0.5));

  auto kneg = CoefficientFn::constant(-1.0, 1.0);
  CHECK(tau(kneg, 1.0, 0.5, 1.0).finite_value() == doctest::Approx(0.5));

  for (double t : {0.25, 0.5, 0.75}) {
    CHECK(std::abs(tau(kpos, 2.0, t, 0.5).finite_value() -
                   tau_const_oracle(2.0, 2.0, t, 0.5)) < 1e-8);
  }
}

TEST_CASE("tau at t = 0 vanishes even on the infinite branch for N > 1") {
  auto k = CoefficientFn::constant(4.0 * M_PI * M_PI, 1.5);
  CHECK(tau(k, 2.0, 0.5, 1.5).is_inf());
  CHECK(tau(k, 2.0, 0.0, 1.5).finite_value() == 0.0);
}

TEST_CASE("tau evaluator agrees with the scalar path") {
  auto k = CoefficientFn::table({0.0, 0.5, 1.3}, {1.0, -2.0, 3.0});
  const std::vector<double> ts{0.2, 0.5, 0.8};
  TauEvaluator ev(k, 3.0, 1.3, {}, ts);
  for (double t : ts) {
    CHECK(ev.at(t).finite_value() ==
          doctest::Approx(tau(k, 3.0, t, 1.3).finite_value()).epsilon(1e-10));
  }
}

TEST_CASE("lsc distortion agrees with the direct value for continuous fields") {
  auto field = CurvatureField::grid_table({0.0, 0.5, 1.0}, {1.0, 2.0, 0.5}, false);
  GeodesicSegment seg{0.0, 1.0};
  auto direct = sigma(restrict_along(field, seg), 0.5, 1.0);
  auto report = sigma_lsc(field, seg, 0.5, 1024, 1e-3, {}, 512);
  CHECK(report.value.finite_value() ==
        doctest::Approx(direct.finite_value()).epsilon(1e-6));
  CHECK(report.converged);
}

TEST_CASE("lsc distortion sequence is monotone for the step field") {
  auto field = CurvatureField::grid_table({0.0, 0.5, 0.5 + 1e-9, 1.0},
                                          {0.0, 0.0, 1.0, 1.0}, true);
  GeodesicSegment seg{0.0, 1.0};
  auto report = sigma_lsc(field, seg, 0.5, 1024, 1e-2, {}, 512);
  for (std::size_t i = 1; i < report.sequence.size(); ++i) {
    CHECK(report.sequence[i - 1] <= report.sequence[i]);
  }
}

TEST_CASE("lsc distortion reaches infinity for super-conjugate fields") {
  auto field = CurvatureField::constant(M_PI * M_PI * 1.44, 0.0, 1.0);
  auto report = sigma_lsc(field, {0.0, 1.0}, 0.5, 64);
  CHECK(report.value.is_inf());
}

TEST_CASE("lsc distortion reports a truncated limit as not converged") {
  auto field = CurvatureField::grid_table({0.0, 0.5, 0.5 + 1e-9, 1.0},
                                          {0.0, 0.0, 4.0, 4.0}, true);
  CHECK_THROWS_AS(sigma_lsc(field, {0.0, 1.0}, 0.5, 4, 1e-12, {}, 512), Error);
  try {
    sigma_lsc(field, {0.0, 1.0}, 0.5, 4, 1e-12, {}, 512);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotConverged);
  }
}

TEST_CASE("taylor residual converges to (1 - t^2) kappa / 6") {
  CHECK(std::abs(taylor_residual(0.0, 0.5, 0.05)) < 1e-10);

  struct Case {
    double kappa0, t;
  };
  for (const Case c : {Case{1.0, 0.5}, Case{-2.0, 0.3}}) {
    const double limit = (1.0 - c.t * c.t) * c.kappa0 / 6.0;
    double prev_gap = 0.0;
    int step = 0;
    for (double h : {0.1, 0.05, 0.025}) {
      const double gap = std::abs(taylor_residual(c.kappa0, c.t, h) - limit);
      if (step++ > 0) CHECK(gap < prev_gap);  // shrinking toward the limit
      prev_gap = gap;
    }
    CHECK(prev_gap < 2e-4);
  }
}

TEST_CASE("boundary value combination") {
  auto k0 = CoefficientFn::constant(0.0, 1.0);
  for (double t : {0.0, 0.3, 1.0}) {
    CHECK(boundary_value_combination(k0, 1.0, 2.0, 5.0, t).finite_value() ==
          doctest::Approx((1.0 - t) * 2.0 + t * 5.0).epsilon(1e-10));
  }
  auto k1 = CoefficientFn::constant(1.0, 1.0);
  CHECK(boundary_value_combination(k1, 1.0, 1.0, 0.0, 0.0).finite_value() ==
        doctest::Approx(1.0));
  CHECK(boundary_value_combination(k1, 1.0, 1.0, 1.0, 0.5).finite_value() ==
        doctest::Approx(2.0 * std::sin(0.5) / std::sin(1.0)).epsilon(1e-8));
}

TEST_CASE("boundary value combination solves the oscillator weakly") {
  auto k = CoefficientFn::table({0.0, 0.4, 1.0}, {2.0, -1.0, 1.5});
  const double theta = 1.0, a = 1.3, b = 0.7, h = 1e-3;
  for (double t : {0.3, 0.5, 0.8}) {
    auto v = [&](double tt) {
      return boundary_value_combination(k, theta, a, b, tt).finite_value();
    };
    const double second = (v(t - h) + v(t + h) - 2.0 * v(t)) / (h * h);
    const double residual = second + k.eval(t * theta) * theta * theta * v(t);
    CHECK(std::abs(residual) < 1e-4);
  }
}

TEST_CASE("sigma is monotone in the coefficient") {
  Rng rng(2024);
  int done = 0;
  while (done < 120) {
    const double theta = rng.uniform() < 0.5 ? 1.0 : 2.0;
    auto lo = random_table(rng, theta, -4.0, 6.0);
    auto hi = lo.shifted(rng.uniform(0.0, 3.0));
    try {
      for (double t : {0.25, 0.5, 0.75}) {
        auto s_lo = sigma(lo, t, theta);
        auto s_hi = sigma(hi, t, theta);
        if (!s_hi.is_inf()) {
          CHECK(s_lo.finite_value() <= s_hi.finite_value() + 1e-9);
        }
      }
      ++done;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Borderline) throw;
    }
  }
}

TEST_CASE("reversal symmetry of the infinity verdict") {
  Rng rng(7);
  int infinite_seen = 0;
  for (int trial = 0; trial < 80; ++trial) {
    auto k = random_table(rng, 2.0, -2.0, 9.0);
    try {
      auto fwd = sigma(k, 0.5, 2.0);
      auto bwd = sigma(k.reversed(), 0.5, 2.0);
      CHECK(fwd.is_inf() == bwd.is_inf());
      infinite_seen += fwd.is_inf();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Borderline) throw;
    }
  }
  CHECK(infinite_seen > 3);
}

TEST_CASE("infinite at one interior time means infinite at all") {
  auto k = CoefficientFn::constant(12.0, 2.0);
  REQUIRE(sigma(k, 0.5, 2.0).is_inf());
  for (double t : {0.1, 0.35, 0.9}) CHECK(sigma(k, t, 2.0).is_inf());
}

TEST_CASE("log-convexity of sigma in the coefficient") {
  Rng rng(33);
  int done = 0;
  while (done < 80) {
    auto ka = random_table(rng, 1.0, -4.0, 4.0);
    auto kb = random_table(rng, 1.0, -4.0, 4.0);
    try {
      for (double lambda : {0.25, 0.5, 0.75}) {
        auto mixed = ka.lin_comb(kb, lambda);
        const double lhs = std::pow(sigma(ka, 0.5, 1.0).finite_value(), 1.0 - lambda) *
                           std::pow(sigma(kb, 0.5, 1.0).finite_value(), lambda);
        const double rhs = sigma(mixed, 0.5, 1.0).finite_value();
        CHECK(lhs >= rhs - 1e-9);
      }
      ++done;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Borderline) throw;
    }
  }
}

TEST_CASE("sigma responds O(delta) to coefficient perturbations") {
  auto k = CoefficientFn::table({0.0, 0.6, 1.0}, {1.5, -0.5, 2.0});
  const double base = sigma(k, 0.5, 1.0).finite_value();
  std::vector<double> logd, loge;
  for (double delta : {1e-2, 1e-3, 1e-4}) {
    const double moved = sigma(k.shifted(delta), 0.5, 1.0).finite_value();
    logd.push_back(std::log(delta));
    loge.push_back(std::log(std::abs(moved - base)));
  }
  CHECK(fit_slope(logd, loge) == doctest::Approx(1.0).epsilon(0.15));
}
