#include "cdv/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cdv/curvature_field.hpp"
#include "cdv/numerics.hpp"

namespace cdv {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace

ComparisonProfile::ComparisonProfile(const CoefficientFn& comparison_coeff,
                                     double N, double r_max,
                                     const SolveOptions& opts)
    : n_(N), r_max_(r_max) {
  if (!(N > 1.0))
    raise(ErrorKind::InvalidArgument, "comparison profile needs N > 1");
  if (!(r_max > 0.0))
    raise(ErrorKind::InvalidArgument, "comparison profile needs r_max > 0");
  SolveOptions so = opts;
  so.detect_first_zero = true;
  sol_ = generalized_sin(comparison_coeff, r_max, so);
}

double ComparisonProfile::sin_value(double r) const {
  if (sol_.first_zero && r >= *sol_.first_zero) return 0.0;
  return std::max(sol_.eval(r), 0.0);
}

double ComparisonProfile::sin_power(double r) const {
  return std::pow(sin_value(r), n_ - 1.0);
}

double ComparisonProfile::cumulative(double r) const {
  if (!(r >= 0.0 && r <= r_max_ * (1.0 + 1e-12)))
    raise(ErrorKind::DomainMismatch, "radius beyond the profile window");
  return simpson([this](double s) { return sin_power(s); }, 0.0,
                 std::min(r, r_max_), 1024);
}

double comparison_volume(double kappa, double N, double r,
                         const SolveOptions& opts) {
  if (!(N > 1.0)) raise(ErrorKind::InvalidArgument, "needs N > 1");
  if (!(r >= 0.0)) raise(ErrorKind::InvalidArgument, "negative radius");
  if (kappa > 0.0) {
    const double conj = M_PI * std::sqrt((N - 1.0) / kappa);
    if (r > conj * (1.0 + 1e-12))
      raise(ErrorKind::BeyondConjugate,
            "radius " + fmt(r) + " beyond the conjugate bound " + fmt(conj));
  }
  if (r == 0.0) return 0.0;
  ComparisonProfile profile(CoefficientFn::constant(kappa / (N - 1.0), r), N, r,
                            opts);
  return profile.cumulative(r);
}

BgReport bishop_gromov_check(const WeightedInterval& space, double x0, double N,
                             const BgMode& mode, double r, double R, double tol,
                             const SolveOptions& opts) {
  if (!(0.0 < r && r < R))
    raise(ErrorKind::InvalidArgument, "need 0 < r < R");
  BgReport report;
  report.tolerance = tol;

  const double s_r = minkowski_content(space, x0, r);
  const double s_R = minkowski_content(space, x0, R);
  const double v_r = volume(space, x0, r);
  const double v_R = volume(space, x0, R);
  if (!(s_R > 0.0) || !(v_R > 0.0))
    raise(ErrorKind::InvalidArgument, "outer sphere or ball has zero mass");
  report.sphere_lhs = s_r / s_R;
  report.ball_lhs = v_r / v_R;

  if (N == 1.0) {
    // flat comparison: requires k <= 0
    double kmax = mode.constant_bound;
    if (mode.kind == BgMode::Kind::RadialEnvelope) {
      if (!space.certified())
        raise(ErrorKind::InvalidArgument, "envelope mode needs a certificate");
      const auto env = radial_envelope(space.certified()->field, x0, R);
      kmax = env.max_on(0.0, R);
    }
    if (kmax > 1e-12)
      raise(ErrorKind::InvalidArgument, "N = 1 comparison needs k <= 0");
    report.sphere_rhs = 1.0;
    report.ball_rhs = r / R;
  } else {
    CoefficientFn coeff = [&] {
      if (mode.kind == BgMode::Kind::ConstantBound)
        return CoefficientFn::constant(mode.constant_bound / (N - 1.0), R);
      if (!space.certified())
        raise(ErrorKind::InvalidArgument, "envelope mode needs a certificate");
      return radial_envelope(space.certified()->field, x0, R)
          .scaled(1.0 / (N - 1.0));
    }();
    ComparisonProfile profile(coeff, N, R, opts);
    if (profile.first_zero() && *profile.first_zero() < R * (1.0 - 1e-9))
      raise(ErrorKind::BeyondConjugate,
            "comparison sin vanishes at " + fmt(*profile.first_zero()) +
                " before R = " + fmt(R));
    const double pr = profile.sin_power(r);
    const double pR = profile.sin_power(R);
    if (!(pR > 0.0))
      raise(ErrorKind::BeyondConjugate, "comparison sin vanishes at R");
    report.sphere_rhs = pr / pR;
    report.ball_rhs = profile.cumulative(r) / profile.cumulative(R);
  }
  report.sphere_slack = report.sphere_lhs - report.sphere_rhs;
  report.ball_slack = report.ball_lhs - report.ball_rhs;
  report.holds = report.sphere_slack >= -tol && report.ball_slack >= -tol;
  return report;
}

double doubling_bound(double kbar, double N, double L, const SolveOptions& opts) {
  if (!(N >= 1.0)) raise(ErrorKind::InvalidArgument, "needs N >= 1");
  if (!(L > 0.0)) raise(ErrorKind::InvalidArgument, "needs L > 0");
  const double base = std::pow(2.0, N);
  if (kbar >= 0.0 || N == 1.0) return N == 1.0 ? 2.0 : base;
  const auto coeff = CoefficientFn::constant(kbar / (N - 1.0), L);
  const SinSolution cosine = generalized_cos(coeff, L, opts);
  return base * std::pow(cosine.eval(L), N - 1.0);
}

ExtendedNonNeg effective_diameter(const CoefficientFn& k, double N,
                                  double probe_max,
                                  const DistortionOptions& opts) {
  if (!(N > 1.0)) raise(ErrorKind::InvalidArgument, "needs N > 1");
  if (!(probe_max > 0.0))
    raise(ErrorKind::InvalidArgument, "needs a positive probe window");
  const double reach = std::min(probe_max, k.length());
  SolveOptions so = opts.solve;
  so.detect_first_zero = true;
  const SinSolution sol = generalized_sin(k.scaled(1.0 / (N - 1.0)), reach, so);
  if (sol.first_zero) return ExtendedNonNeg::finite(*sol.first_zero);
  return ExtendedNonNeg::infinity();
}

ExtendedNonNeg effective_diameter(double k_const, double N, double probe_max,
                                  const DistortionOptions& opts) {
  return effective_diameter(CoefficientFn::constant(k_const, probe_max), N,
                            probe_max, opts);
}

double schneider_bound(double c, double N, double R, double delta) {
  if (!(N > 1.0)) raise(ErrorKind::InvalidArgument, "needs N > 1");
  if (!(R > 0.0 && delta > 0.0))
    raise(ErrorKind::InvalidArgument, "needs R > 0 and delta > 0");
  if (!(c > (N - 1.0) / 4.0))
    raise(ErrorKind::SubcriticalC,
          "c = " + fmt(c) + " does not exceed (N-1)/4 = " + fmt((N - 1.0) / 4.0));
  const double alpha = std::sqrt(c / (N - 1.0) - 0.25);
  return (R + delta) * std::exp(M_PI / alpha);
}

SchneiderWitness schneider_oscillation_witness(double c, double N, double d,
                                               double eps,
                                               const SolveOptions& opts) {
  if (!(N > 1.0)) raise(ErrorKind::InvalidArgument, "needs N > 1");
  if (!(d > 0.0 && eps > 0.0))
    raise(ErrorKind::InvalidArgument, "needs d > 0 and eps > 0");
  const double beta = c / (N - 1.0);  // kappa = beta / (eps + d - t)^2
  SchneiderWitness witness;
  witness.supercritical = beta > 0.25;

  const auto kappa = CoefficientFn::power_decreasing(beta, eps + d, -2.0, d);
  SolveOptions so = opts;
  so.detect_first_zero = true;
  const SinSolution sol = generalized_sin(kappa, d, so);
  if (sol.first_zero) witness.zero = *sol.first_zero;

  if (witness.supercritical) {
    const double alpha = std::sqrt(beta - 0.25);
    witness.alpha = alpha;
    const double s0 = eps + d;
    witness.zero_predicted = s0 * (1.0 - std::exp(-M_PI / alpha));
    // closed form sqrt(s) sin(alpha log(s / m)) with m = s0 e^{-pi/alpha},
    // normalized to unit initial slope
    const double m = s0 * std::exp(-M_PI / alpha);
    const double scale = std::sqrt(s0) / alpha;
    double dev = 0.0;
    for (int i = 0; i <= 2048; ++i) {
      const double t = d * i / 2048;
      const double s = s0 - t;
      const double closed = scale * std::sqrt(s) * std::sin(alpha * std::log(s / m));
      dev = std::max(dev, std::abs(sol.eval(t) - closed));
    }
    witness.max_closed_form_dev = dev;
  }
  return witness;
}

BmReport brunn_minkowski_check(const WeightedInterval& space,
                               const CurvatureField& k, double N,
                               const Interval& A0, const Interval& A1,
                               const std::vector<double>& t_grid, int pair_grid,
                               double tol, const DistortionOptions& opts) {
  if (!(N >= 1.0)) raise(ErrorKind::InvalidArgument, "needs N >= 1");
  const double m0 = space.measure_of(A0.lo, A0.hi);
  const double m1 = space.measure_of(A1.lo, A1.hi);
  if (!(m0 > 0.0 && m1 > 0.0))
    raise(ErrorKind::InvalidArgument, "endpoint sets must carry mass");

  BmReport report;
  report.tolerance = tol;
  if (pair_grid < 2) pair_grid = 2;

  // tau evaluators for every endpoint pair, shared across times
  struct Pair {
    std::optional<TauEvaluator> fwd, rev;
  };
  std::vector<Pair> pairs;
  pairs.reserve(pair_grid * pair_grid);
  std::vector<double> one_minus;
  for (double t : t_grid) one_minus.push_back(1.0 - t);
  for (int i = 0; i < pair_grid; ++i) {
    const double x0 = A0.lo + (A0.hi - A0.lo) * i / (pair_grid - 1);
    for (int j = 0; j < pair_grid; ++j) {
      const double x1 = A1.lo + (A1.hi - A1.lo) * j / (pair_grid - 1);
      const GeodesicSegment seg{x0, x1};
      const CoefficientFn along = restrict_along(k, seg);
      Pair p;
      p.fwd.emplace(along, N, seg.length(), opts, t_grid);
      p.rev.emplace(along.reversed(), N, seg.length(), opts, one_minus);
      pairs.push_back(std::move(p));
    }
  }

  report.holds = true;
  for (double t : t_grid) {
    const Interval At = midpoint_set(A0, A1, t);
    BmReport::Row row;
    row.t = t;
    row.lhs = std::pow(space.measure_of(At.lo, At.hi), 1.0 / N);
    ExtendedNonNeg inf_rev = ExtendedNonNeg::infinity();
    ExtendedNonNeg inf_fwd = ExtendedNonNeg::infinity();
    for (const Pair& p : pairs) {
      const ExtendedNonNeg r = p.rev->at(1.0 - t);
      const ExtendedNonNeg f = p.fwd->at(t);
      if (r < inf_rev) inf_rev = r;
      if (f < inf_fwd) inf_fwd = f;
    }
    const ExtendedNonNeg rhs = std::pow(m0, 1.0 / N) * inf_rev +
                               std::pow(m1, 1.0 / N) * inf_fwd;
    if (rhs.is_inf()) {
      row.rhs_infinite = true;
      row.slack = -std::numeric_limits<double>::infinity();
      report.holds = false;
    } else {
      row.rhs = rhs.finite_value();
      row.slack = row.lhs - row.rhs;
      if (row.slack < -tol) report.holds = false;
    }
    report.rows.push_back(row);
  }
  return report;
}

double fitted_volume_exponent(const WeightedInterval& space, double x0,
                              const std::vector<double>& radii) {
  std::vector<double> lx, ly;
  for (double r : radii) {
    const double v = volume(space, x0, r);
    if (v > 0.0 && r > 0.0) {
      lx.push_back(std::log(r));
      ly.push_back(std::log(v));
    }
  }
  return fit_slope(lx, ly);
}

}  // namespace cdv
