#include "cdv/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>

#include "cdv/cd_check.hpp"
#include "cdv/geometry.hpp"
#include "cdv/numerics.hpp"

namespace cdv {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }

  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

CoefficientFn random_table(Rng& rng, double length, double lo, double hi,
                           int knots = 5) {
  std::vector<double> ts(knots), ks(knots);
  for (int i = 0; i < knots; ++i) {
    ts[i] = length * i / (knots - 1);
    ks[i] = rng.uniform(lo, hi);
  }
  return CoefficientFn::table(std::move(ts), std::move(ks));
}

// ordered pair of tables on shared knots, values within [lo, hi]
std::pair<CoefficientFn, CoefficientFn> ordered_tables(Rng& rng, double length,
                                                       double lo, double hi) {
  const int knots = 5;
  std::vector<double> ts(knots), ka(knots), kb(knots);
  for (int i = 0; i < knots; ++i) {
    ts[i] = length * i / (knots - 1);
    const double x = rng.uniform(lo, hi);
    const double y = rng.uniform(lo, hi);
    ka[i] = std::min(x, y);
    kb[i] = std::max(x, y);
  }
  return {CoefficientFn::table(ts, ka), CoefficientFn::table(ts, kb)};
}

// ---------------------------------------------------------------------------
// criterion 1: solver against constant-coefficient closed forms
// ---------------------------------------------------------------------------

CriterionResult criterion_ode_oracle(const SuiteOptions&) {
  const auto start = Clock::now();
  Check check;
  SolveOptions tight;
  tight.rtol = 1e-13;
  tight.atol = 1e-14;
  for (double K : {-4.0, -1.0, 0.0, 1.0, 4.0}) {
    const double window =
        K > 0.0 ? std::min(3.0, 0.95 * M_PI / std::sqrt(K)) : 3.0;
    const auto t0 = Clock::now();
    const SinSolution sol =
        generalized_sin(CoefficientFn::constant(K, window), window, tight);
    double worst = 0.0;
    for (int i = 0; i <= 512; ++i) {
      const double t = window * i / 512;
      double ref;
      if (K > 0.0)
        ref = std::sin(std::sqrt(K) * t) / std::sqrt(K);
      else if (K < 0.0)
        ref = std::sinh(std::sqrt(-K) * t) / std::sqrt(-K);
      else
        ref = t;
      worst = std::max(worst, std::abs(sol.eval(t) - ref));
    }
    const double elapsed = seconds_since(t0);
    check.require(worst <= 1e-8,
                  "K=" + fmt(K) + " max err " + fmt(worst) + " > 1e-8");
    check.require(elapsed < 1.0, "K=" + fmt(K) + " took " + fmt(elapsed) + " s");
    check.note("K=" + fmt(K) + " err " + fmt(worst));
  }
  return {1, "solver matches constant-coefficient closed forms", check.ok,
          check.detail, seconds_since(start)};
}

// ---------------------------------------------------------------------------
// criterion 2: Sturm comparison sweep
// ---------------------------------------------------------------------------

CriterionResult criterion_sturm_sweep(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check check;
  Rng rng(opts.seed + 2);
  double worst_gap = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto [lo, hi] = ordered_tables(rng, 1.0, -4.0, 4.0);
    const ComparisonReport report = verify_sturm_comparison(lo, hi, 1.0, 1e-7);
    if (!report.holds) {
      check.require(false, "trial " + std::to_string(trial) + " gap " +
                               fmt(report.worst_gap));
      break;
    }
    worst_gap = std::min(worst_gap, report.worst_gap);
  }
  const double elapsed = seconds_since(start);
  check.require(elapsed < 30.0, "sweep took " + fmt(elapsed) + " s");
  check.note("1000 ordered pairs, worst gap " + fmt(worst_gap));
  return {2, "Sturm comparison on 1000 random ordered pairs", check.ok,
          check.detail, elapsed};
}

// ---------------------------------------------------------------------------
// criterion 3: distortion algebra
// ---------------------------------------------------------------------------

struct ExtendedSlack {
  bool order_violated = false;
  double slack = std::numeric_limits<double>::infinity();
};

// slack of lhs >= rhs in the extended order, relative for large magnitudes
ExtendedSlack extended_ge(const ExtendedNonNeg& lhs, const ExtendedNonNeg& rhs) {
  if (rhs.is_inf()) return {!lhs.is_inf(), 0.0};
  if (lhs.is_inf()) return {false, std::numeric_limits<double>::infinity()};
  const double l = lhs.finite_value(), r = rhs.finite_value();
  return {false, (l - r) / std::max(1.0, r)};
}

CriterionResult criterion_distortion_algebra(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check check;
  Rng rng(opts.seed + 3);
  const std::vector<double> ts{0.25, 0.5, 0.75};
  DistortionOptions dopts;
  dopts.solve.rtol = 1e-12;
  dopts.solve.atol = 1e-13;

  // monotonicity with endpoint normalization
  double worst_mono = HUGE_VAL;
  int done = 0, redraws = 0;
  while (done < 1000) {
    const double theta = rng.uniform(0.05, 2.0);
    auto [lo, hi] = ordered_tables(rng, theta, -4.0, 4.0);
    try {
      bool endpoint_ok = true;
      if (!sigma(lo, 0.5, theta, dopts).is_inf()) {
        endpoint_ok = sigma(lo, 0.0, theta, dopts).finite_value() == 0.0 &&
                      sigma(lo, 1.0, theta, dopts).finite_value() == 1.0;
      }
      check.require(endpoint_ok, "endpoint normalization failed");
      for (double t : ts) {
        const auto slack = extended_ge(sigma(hi, t, theta, dopts),
                                       sigma(lo, t, theta, dopts));
        check.require(!slack.order_violated, "monotonicity order violated");
        worst_mono = std::min(worst_mono, slack.slack);
      }
      ++done;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Borderline) throw;
      ++redraws;
    }
  }
  check.require(worst_mono >= -1e-9, "monotonicity slack " + fmt(worst_mono));

  // log-convexity in the coefficient
  double worst_log = HUGE_VAL;
  done = 0;
  while (done < 1000) {
    const double theta = rng.uniform(0.05, 2.0);
    auto ka = random_table(rng, theta, -4.0, 4.0);
    auto kb = random_table(rng, theta, -4.0, 4.0);
    const double lambda = std::vector<double>{0.25, 0.5, 0.75}[done % 3];
    try {
      const auto sa = sigma(ka, 0.5, theta, dopts);
      const auto sb = sigma(kb, 0.5, theta, dopts);
      const auto sm = sigma(ka.lin_comb(kb, lambda), 0.5, theta, dopts);
      if (sa.is_inf() || sb.is_inf()) {
        ++redraws;
        continue;
      }
      const auto slack = extended_ge(
          ExtendedNonNeg::finite(std::pow(sa.finite_value(), 1.0 - lambda) *
                                 std::pow(sb.finite_value(), lambda)),
          sm);
      check.require(!slack.order_violated, "log-convexity order violated");
      worst_log = std::min(worst_log, slack.slack);
      ++done;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Borderline) throw;
      ++redraws;
    }
  }
  check.require(worst_log >= -1e-9, "log-convexity slack " + fmt(worst_log));

  // the three sigma/tau product inequalities
  double worst_holder = HUGE_VAL;
  done = 0;
  while (done < 1000) {
    const double theta = rng.uniform(0.05, 2.0);
    const double N1 = rng.uniform(1.0, 10.0), N2 = rng.uniform(1.0, 10.0);
    auto ka = random_table(rng, theta, -4.0, 4.0);
    auto kb = random_table(rng, theta, -4.0, 4.0);
    const double t = std::vector<double>{0.25, 0.5, 0.75}[done % 3];
    try {
      const auto sum = ka.lin_comb(kb, 0.5).scaled(2.0);  // k + k'
      const auto s1 = sigma_kN(ka, N1, t, theta, dopts);
      const auto s2 = sigma_kN(kb, N2, t, theta, dopts);
      const auto s12 = sigma_kN(sum, N1 + N2, t, theta, dopts);
      const auto t1 = tau(ka, N1, t, theta, dopts);
      const auto t12 = tau(sum, N1 + N2, t, theta, dopts);
      const auto t2 = tau(kb, N2, t, theta, dopts);

      const auto slack_a =
          extended_ge(s1.pow(N1) * s2.pow(N2), s12.pow(N1 + N2));
      const auto slack_b =
          extended_ge(t1.pow(N1) * s2.pow(N2), t12.pow(N1 + N2));
      const auto slack_c =
          extended_ge(t1.pow(N1) * t2.pow(N2), t12.pow(N1 + N2));
      check.require(!slack_a.order_violated && !slack_b.order_violated &&
                        !slack_c.order_violated,
                    "product inequality order violated");
      worst_holder = std::min(
          {worst_holder, slack_a.slack, slack_b.slack, slack_c.slack});
      ++done;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Borderline) throw;
      ++redraws;
    }
  }
  check.require(worst_holder >= -1e-9, "product slack " + fmt(worst_holder));
  check.note("worst slacks: mono " + fmt(worst_mono) + ", log " +
             fmt(worst_log) + ", products " + fmt(worst_holder) + ", " +
             std::to_string(redraws) + " borderline redraws");
  return {3, "distortion algebra on 1000 seeded instances each", check.ok,
          check.detail, seconds_since(start)};
}

// ---------------------------------------------------------------------------
// criterion 4: second-order Taylor constant
// ---------------------------------------------------------------------------

CriterionResult criterion_taylor(const SuiteOptions&) {
  const auto start = Clock::now();
  Check check;
  DistortionOptions dopts;
  dopts.solve.rtol = 1e-13;
  dopts.solve.atol = 1e-14;
  struct Case {
    double kappa0, t;
  };
  for (const Case c : {Case{1.0, 0.5}, Case{-2.0, 0.3}, Case{3.0, 0.7}}) {
    const double sixth = (1.0 - c.t * c.t) * c.kappa0 / 6.0;
    const double third = (1.0 - c.t * c.t) * c.kappa0 / 3.0;
    std::vector<double> gaps;
    for (double h : {0.1, 0.05, 0.025}) {
      gaps.push_back(std::abs(taylor_residual(c.kappa0, c.t, h, dopts) - sixth));
    }
    check.require(gaps[1] < gaps[0] && gaps[2] < gaps[1],
                  "kappa0=" + fmt(c.kappa0) + " gaps not decreasing");
    const double rate1 = gaps[0] / std::max(gaps[1], 1e-300);
    const double rate2 = gaps[1] / std::max(gaps[2], 1e-300);
    check.require(rate1 > 2.5 && rate1 < 5.5 && rate2 > 2.5 && rate2 < 5.5,
                  "kappa0=" + fmt(c.kappa0) + " rates " + fmt(rate1) + "," +
                      fmt(rate2) + " not second order");
    check.require(gaps[2] <= 1e-3 * std::max(1.0, std::abs(c.kappa0)),
                  "kappa0=" + fmt(c.kappa0) + " final gap " + fmt(gaps[2]));
    const double res = taylor_residual(c.kappa0, c.t, 0.025, dopts);
    check.require(std::abs(res - sixth) < std::abs(res - third),
                  "kappa0=" + fmt(c.kappa0) + " favors the 1/3 constant");
  }
  check.note("limit constant is (1-t^2) kappa / 6 at observed rate ~4");
  return {4, "Taylor residual selects the 1/6 constant at second order",
          check.ok, check.detail, seconds_since(start)};
}

// ---------------------------------------------------------------------------
// criteria 5 and 6: CD verifiers on model spaces
// ---------------------------------------------------------------------------

struct SpaceCase {
  std::string name;
  std::shared_ptr<const WeightedInterval> space;
  double N = 1.0;
  Measure1D mu0, mu1;
  double needle_lo0, needle_lo1;  // left ends of the violation needles
};

std::vector<SpaceCase> model_suite() {
  std::vector<SpaceCase> cases;
  auto add = [&](const std::string& name,
                 std::shared_ptr<const WeightedInterval> space, double N,
                 double f0, double p0, double f1, double p1, double n0,
                 double n1) {
    auto mu0 = Measure1D::normalized(space, [f0, p0](double x) {
      return 1.0 + 0.6 * std::sin(f0 * x + p0);
    });
    auto mu1 = Measure1D::normalized(space, [f1, p1](double x) {
      return 1.0 + 0.6 * std::sin(f1 * x + p1);
    });
    cases.push_back(SpaceCase{name, space, N, std::move(mu0), std::move(mu1),
                              n0, n1});
  };

  for (double N : {1.0, 2.0, 5.0}) {
    auto space = std::make_shared<const WeightedInterval>(
        WeightedInterval::lebesgue(0.0, 1.0, 4096));
    WeightedInterval with_cert = *space;
    with_cert.certify(CurvatureField::constant(0.0, 0.0, 1.0), N);
    add("lebesgue N=" + fmt(N),
        std::make_shared<const WeightedInterval>(std::move(with_cert)), N, 3.0,
        0.4, 5.0, 2.1, 0.05, 0.9);
  }
  for (double N : {2.0, 3.0, 5.0}) {
    const double d = 0.1;
    add("sin^{N-1} N=" + fmt(N),
        std::make_shared<const WeightedInterval>(model_space(
            CoefficientFn::constant(1.0, M_PI - 2 * d), N, d, M_PI - d,
            std::sin(d), std::cos(d), 4096)),
        N, 2.0, 0.3, 3.0, 4.0, 0.3, 2.3);
  }
  for (double N : {2.0, 4.0}) {
    const double eps = 0.1, R = 10.0;
    add("sqrt-r N=" + fmt(N),
        std::make_shared<const WeightedInterval>(model_space(
            CoefficientFn::power_increasing(0.25, eps, -2.0, R - eps), N, eps,
            R, std::sqrt(eps), 0.5 / std::sqrt(eps), 4096)),
        N, 0.8, 1.0, 0.5, 2.5, 0.3, 3.3);
  }
  return cases;
}

CriterionResult criterion_model_cd(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check check;
  CdOptions cd;
  cd.Q = 512;
  cd.tolerance = 1e-3;
  cd.jobs = opts.jobs;

  for (const SpaceCase& c : model_suite()) {
    const auto& field = c.space->certified()->field;
    const CdReport report =
        check_pointwise_cd(*c.space, field, c.N, c.mu0, c.mu1, cd);
    check.require(report.pass,
                  c.name + " slack " + fmt(report.worst_slack) + " fails");
    check.note(c.name + " slack " + fmt(report.worst_slack));

    // inflation probe: +0.5 on the field must break a needle transport
    auto needle0 = Measure1D::uniform_on(c.space, c.needle_lo0, c.needle_lo0 + 0.02);
    auto needle1 = Measure1D::uniform_on(c.space, c.needle_lo1, c.needle_lo1 + 0.02);
    const CertifiedResult probe = certify_pointwise_cd(
        *c.space, field.shifted(0.5), c.N, needle0, needle1, cd);
    check.require(probe.verdict == CdVerdict::Violated,
                  c.name + " inflation not certified as a violation");
  }
  const double elapsed = seconds_since(start);
  check.require(elapsed < 120.0, "suite took " + fmt(elapsed) + " s");
  return {5, "pointwise CD on model spaces with certified violations", check.ok,
          check.detail, elapsed};
}

CriterionResult criterion_form_implications(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check check;
  CdOptions cd;
  cd.Q = 512;
  cd.tolerance = 1e-3;
  cd.jobs = opts.jobs;

  for (const SpaceCase& c : model_suite()) {
    const auto& field = c.space->certified()->field;
    const std::vector<double> nprime{c.N, c.N + 1.0, 2.0 * c.N + 1.0};
    const CdReport entropy =
        check_entropy_cd(*c.space, field, c.N, c.mu0, c.mu1, nprime, cd);
    check.require(entropy.pass, c.name + " entropy form slack " +
                                    fmt(entropy.worst_slack));
    const CdReport infinity =
        check_cd_infinity(*c.space, field, c.mu0, c.mu1, cd);
    check.require(infinity.pass, c.name + " infinity form slack " +
                                     fmt(infinity.worst_slack));
    const CdReport reduced =
        check_reduced_cd(*c.space, field, c.N, c.mu0, c.mu1, cd);
    check.require(reduced.pass,
                  c.name + " reduced form slack " + fmt(reduced.worst_slack));
  }
  return {6, "entropy, infinite-dimensional and reduced forms follow", check.ok,
          check.detail, seconds_since(start)};
}

// ---------------------------------------------------------------------------
// criterion 7: volume growth comparison
// ---------------------------------------------------------------------------

CriterionResult criterion_bishop_gromov(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check check;
  for (double N : {2.0, 3.0}) {
    auto space = model_space(CoefficientFn::constant(1.0, M_PI), N, 0.0, M_PI,
                             0.0, 1.0, 4096);
    for (auto [r, R] : std::vector<std::pair<double, double>>{
             {0.5, 1.0}, {1.0, 2.0}, {2.0, 3.0}}) {
      const BgReport report = bishop_gromov_check(
          space, 0.0, N, BgMode::constant(N - 1.0), r, R, 1e-6);
      check.require(report.holds && std::abs(report.sphere_slack) <= 1e-6 &&
                        std::abs(report.ball_slack) <= 1e-6,
                    "N=" + fmt(N) + " (r,R)=(" + fmt(r) + "," + fmt(R) +
                        ") slacks " + fmt(report.sphere_slack) + "/" +
                        fmt(report.ball_slack));
    }
  }

  // envelope bound dominates the ball-minimum bound
  Rng rng(opts.seed + 7);
  const double r = 0.8, R = 1.6, N = 3.0;
  double worst = HUGE_VAL;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> rs{0.0, 0.7, 1.4, 2.0};
    std::vector<double> ks(4);
    for (auto& v : ks) v = rng.uniform(-2.0, 1.2);
    auto field = CurvatureField::radial_table(0.0, rs, ks, 0.0, 2.0, false);
    const auto envelope = radial_envelope(field, 0.0, R);
    ComparisonProfile p_env(envelope.scaled(1.0 / (N - 1.0)), N, R);
    ComparisonProfile p_min(
        CoefficientFn::constant(envelope.min_on(0.0, R) / (N - 1.0), R), N, R);
    const double env_ratio = p_env.sin_power(r) / p_env.sin_power(R);
    const double min_ratio = p_min.sin_power(r) / p_min.sin_power(R);
    worst = std::min(worst, env_ratio - min_ratio);
  }
  check.require(worst >= -1e-9, "envelope weaker than constant by " + fmt(worst));
  check.note("envelope-minus-constant ratio margin " + fmt(worst));
  return {7, "volume growth comparison saturates on the model", check.ok,
          check.detail, seconds_since(start)};
}

// ---------------------------------------------------------------------------
// criterion 8: oscillation witness and diameter bound
// ---------------------------------------------------------------------------

CriterionResult criterion_schneider(const SuiteOptions&) {
  const auto start = Clock::now();
  Check check;
  const double N = 3.0, eps = 0.1;
  struct Case {
    double alpha, d;
  };
  for (const Case c : {Case{0.5, 100.0}, Case{1.0, 10.0}, Case{2.0, 10.0}}) {
    const double curv = (c.alpha * c.alpha + 0.25) * (N - 1.0);
    const SchneiderWitness witness =
        schneider_oscillation_witness(curv, N, c.d, eps);
    check.require(witness.supercritical, "alpha=" + fmt(c.alpha) + " subcritical");
    check.require(witness.max_closed_form_dev <= 1e-6,
                  "alpha=" + fmt(c.alpha) + " closed-form dev " +
                      fmt(witness.max_closed_form_dev));
    const bool zero_ok =
        witness.zero && witness.zero_predicted &&
        std::abs(*witness.zero - *witness.zero_predicted) <= 1e-6 &&
        *witness.zero < c.d;
    check.require(zero_ok, "alpha=" + fmt(c.alpha) + " zero mismatch");
  }

  // sharpness: the critical coefficient does not oscillate on long windows
  const SchneiderWitness critical =
      schneider_oscillation_witness((N - 1.0) / 4.0, N, 1000.0, eps);
  check.require(!critical.supercritical && !critical.zero,
                "critical coefficient oscillated");

  // the diameter bound formula is exact
  const double alpha = 1.0, R = 1.0, delta = 0.5;
  const double c_value = (alpha * alpha + 0.25) * (N - 1.0);
  const double bound = schneider_bound(c_value, N, R, delta);
  const double expect = (R + delta) * std::exp(M_PI / alpha);
  check.require(std::abs(bound - expect) <= 1e-12 * expect, "bound not exact");
  bool subcritical_rejected = false;
  try {
    schneider_bound((N - 1.0) / 4.0, N, R, delta);
  } catch (const Error& e) {
    subcritical_rejected = e.kind() == ErrorKind::SubcriticalC;
  }
  check.require(subcritical_rejected, "subcritical c accepted");
  return {8, "oscillation witness matches the log-sin solution", check.ok,
          check.detail, seconds_since(start)};
}

// ---------------------------------------------------------------------------
// criterion 9: tensorization
// ---------------------------------------------------------------------------

CriterionResult criterion_tensorization(const SuiteOptions& opts) {
  const auto start = Clock::now();
  Check check;
  Rng rng(opts.seed + 9);
  double worst = HUGE_VAL;
  for (int trial = 0; trial < 1000; ++trial) {
    const double slack = tensor_coefficient_slack(
        rng.uniform(-2.0, 2.0), rng.uniform(1.0, 5.0), rng.uniform(0.05, 2.0),
        rng.uniform(-2.0, 2.0), rng.uniform(1.0, 5.0), rng.uniform(0.05, 2.0),
        std::vector<double>{0.25, 0.5, 0.75}[trial % 3]);
    worst = std::min(worst, slack);
  }
  check.require(worst >= -1e-9, "coefficient inequality slack " + fmt(worst));
  check.note("coefficient slack " + fmt(worst));

  CdOptions cd;
  cd.Q = 256;
  cd.tolerance = 1e-3;
  cd.t_grid = {0.25, 0.5, 0.75};
  cd.jobs = opts.jobs;

  {
    auto make_flat = [] {
      WeightedInterval f = WeightedInterval::lebesgue(0.0, 1.0, 2048);
      f.certify(CurvatureField::constant(0.0, 0.0, 1.0), 1.0);
      return std::make_shared<const WeightedInterval>(std::move(f));
    };
    auto p1 = make_flat(), p2 = make_flat();
    ProductSpace prod(*p1, *p2);
    auto m = [&](std::shared_ptr<const WeightedInterval> s, double f, double p) {
      return Measure1D::normalized(s, [f, p](double x) {
        return 1.0 + 0.6 * std::sin(f * x + p);
      });
    };
    const TensorReport report = check_tensorization(
        prod, m(p1, 3.0, 0.4), m(p2, 2.0, 1.0), m(p1, 5.0, 2.1), m(p2, 4.0, 5.5),
        cd);
    check.require(report.pointwise.pass, "flat product slack " +
                                             fmt(report.pointwise.worst_slack));
    check.require(report.coefficient_claim_holds,
                  "flat product coefficient claim");
    check.note("flat x flat slack " + fmt(report.pointwise.worst_slack));
  }
  {
    const double d = 0.1;
    auto sphere = std::make_shared<const WeightedInterval>(
        model_space(CoefficientFn::constant(1.0, M_PI - 2 * d), 2.0, d,
                    M_PI - d, std::sin(d), std::cos(d), 2048));
    WeightedInterval flat = WeightedInterval::lebesgue(0.0, 1.0, 2048);
    flat.certify(CurvatureField::constant(0.0, 0.0, 1.0), 1.0);
    auto p2 = std::make_shared<const WeightedInterval>(std::move(flat));
    ProductSpace prod(*sphere, *p2);
    auto m = [&](std::shared_ptr<const WeightedInterval> s, double f, double p) {
      return Measure1D::normalized(s, [f, p](double x) {
        return 1.0 + 0.6 * std::sin(f * x + p);
      });
    };
    const TensorReport report = check_tensorization(
        prod, m(sphere, 2.0, 0.3), m(p2, 2.0, 1.0), m(sphere, 3.0, 4.0),
        m(p2, 4.0, 5.5), cd);
    check.require(report.pointwise.pass, "sphere x flat slack " +
                                             fmt(report.pointwise.worst_slack));
    check.require(report.coefficient_claim_holds,
                  "sphere x flat coefficient claim");
    check.note("sphere x flat slack " + fmt(report.pointwise.worst_slack));
  }
  return {9, "tensorization coefficient claim and product checks", check.ok,
          check.detail, seconds_since(start)};
}

// ---------------------------------------------------------------------------
// criterion 10: transport layer sanity
// ---------------------------------------------------------------------------

CriterionResult criterion_transport(const SuiteOptions&) {
  const auto start = Clock::now();
  Check check;
  auto space = std::make_shared<const WeightedInterval>(
      WeightedInterval::lebesgue(0.0, 4.0, 4096));
  auto mu0 = Measure1D::uniform_on(space, 0.0, 1.0);
  auto mu1 = Measure1D::uniform_on(space, 1.0, 2.0);
  for (int Q : {64, 256, 1024}) {
    const double w = wasserstein2(mu0, mu1, Q);
    check.require(std::abs(w - 1.0) <= 1e-12,
                  "translation W2 at Q=" + std::to_string(Q) + " is " + fmt(w));
  }

  auto unit = std::make_shared<const WeightedInterval>(
      WeightedInterval::lebesgue(0.0, 1.0, 4096));
  auto rho0 = Measure1D::normalized(unit, [](double x) { return 1.0 + x; });
  auto rho1 = Measure1D::normalized(
      unit, [](double x) { return 1.0 + 0.7 * std::sin(3.0 * x); });
  const int Q = 256;
  const double full = wasserstein2(rho0, rho1, Q);
  for (double t : {0.25, 0.5, 0.75}) {
    auto mu_t = measure_from_slice(unit, interpolate(rho0, rho1, t, Q));
    const double gap = std::abs(wasserstein2(rho0, mu_t, Q) - t * full);
    check.require(gap <= 3.0 / Q,
                  "geodesic gap " + fmt(gap) + " at t=" + fmt(t));
  }

  const double ent = shannon_entropy(rho0);
  const double gap3 = std::abs(1e3 * (1.0 + renyi_entropy(rho0, 1e3)) - ent);
  const double gap4 = std::abs(1e4 * (1.0 + renyi_entropy(rho0, 1e4)) - ent);
  check.require(gap3 <= 10.0 / 1e3 && gap4 <= 10.0 / 1e4,
                "entropy limit gaps " + fmt(gap3) + ", " + fmt(gap4));
  check.note("entropy limit gaps " + fmt(gap3) + " and " + fmt(gap4));
  return {10, "transport layer: translations, geodesics, entropy limit",
          check.ok, check.detail, seconds_since(start)};
}

}  // namespace

std::vector<CriterionResult> run_suite(const SuiteOptions& opts) {
  using Fn = std::function<CriterionResult(const SuiteOptions&)>;
  const std::vector<Fn> criteria{
      criterion_ode_oracle,     criterion_sturm_sweep,
      criterion_distortion_algebra, criterion_taylor,
      criterion_model_cd,       criterion_form_implications,
      criterion_bishop_gromov,  criterion_schneider,
      criterion_tensorization,  criterion_transport};
  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!opts.only.empty() &&
        std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end())
      continue;
    results.push_back(criteria[i](opts));
  }
  return results;
}

}  // namespace cdv
