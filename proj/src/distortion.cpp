#include "cdv/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cdv {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

void check_unit_time(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    raise(ErrorKind::InvalidArgument, "t = " + fmt(t) + " outside [0,1]");
}

}  // namespace

ExtendedNonNeg ExtendedNonNeg::finite(double v) {
  if (!(v >= 0.0) || !std::isfinite(v))
    raise(ErrorKind::InvalidArgument, "extended value must be finite and >= 0");
  ExtendedNonNeg x;
  x.v_ = v;
  return x;
}

double ExtendedNonNeg::finite_value() const {
  if (inf_) raise(ErrorKind::InvalidArgument, "value is infinite");
  return v_;
}

ExtendedNonNeg ExtendedNonNeg::pow(double alpha) const {
  if (!(alpha > 0.0))
    raise(ErrorKind::InvalidArgument, "extended pow needs a positive exponent");
  if (inf_) return infinity();
  return finite(std::pow(v_, alpha));
}

ExtendedNonNeg operator*(double r, const ExtendedNonNeg& x) {
  if (!(r >= 0.0))
    raise(ErrorKind::InvalidArgument, "negative scalar on extended value");
  if (r == 0.0) return ExtendedNonNeg::finite(0.0);  // 0 * inf = 0
  if (x.inf_) return ExtendedNonNeg::infinity();
  return ExtendedNonNeg::finite(r * x.v_);
}

ExtendedNonNeg operator*(const ExtendedNonNeg& a, const ExtendedNonNeg& b) {
  if (a.inf_ || b.inf_) {
    if ((!a.inf_ && a.v_ == 0.0) || (!b.inf_ && b.v_ == 0.0))
      return ExtendedNonNeg::finite(0.0);
    return ExtendedNonNeg::infinity();
  }
  return ExtendedNonNeg::finite(a.v_ * b.v_);
}

ExtendedNonNeg operator+(const ExtendedNonNeg& a, const ExtendedNonNeg& b) {
  if (a.inf_ || b.inf_) return ExtendedNonNeg::infinity();
  return ExtendedNonNeg::finite(a.v_ + b.v_);
}

bool ExtendedNonNeg::operator<(const ExtendedNonNeg& o) const {
  if (inf_) return false;
  if (o.inf_) return true;
  return v_ < o.v_;
}

bool ExtendedNonNeg::operator<=(const ExtendedNonNeg& o) const {
  return !(o < *this);
}

std::string ExtendedNonNeg::str() const { return inf_ ? "inf" : fmt(v_); }

// ---------------------------------------------------------------------------
// SigmaProfile
// ---------------------------------------------------------------------------

SigmaProfile::SigmaProfile(const CoefficientFn& kappa, double max_length,
                           const DistortionOptions& opts,
                           const std::vector<double>& required_points)
    : max_length_(max_length), band_rel_(opts.zero_band_rel) {
  if (!(max_length > 0.0))
    raise(ErrorKind::InvalidArgument, "sigma profile needs a positive length");
  SolveOptions so = opts.solve;
  so.required_points = required_points;
  refine_abs_ = so.zero_refine_rel * max_length;
  sol_ = generalized_sin(kappa, max_length, so);
}

double SigmaProfile::band(double theta) const {
  return std::max(band_rel_ * theta, 16.0 * refine_abs_);
}

bool SigmaProfile::infinite_at(double theta) const {
  if (!sol_.first_zero) return false;
  return *sol_.first_zero <= theta - band(theta);
}

ExtendedNonNeg SigmaProfile::sigma(double t, double theta) const {
  check_unit_time(t);
  if (!(theta >= 0.0 && theta <= max_length_ * (1.0 + 1e-12)))
    raise(ErrorKind::DomainMismatch, "theta beyond the solved profile");
  if (theta == 0.0) return ExtendedNonNeg::finite(t);
  theta = std::min(theta, max_length_);

  const double b = band(theta);
  if (sol_.first_zero) {
    const double z = *sol_.first_zero;
    if (z <= theta - b) return ExtendedNonNeg::infinity();
    if (z < theta + b)
      raise(ErrorKind::Borderline,
            "first zero at " + fmt(z) + " within tolerance of theta = " + fmt(theta));
    // zero safely beyond theta: finite branch
  } else {
    // no zero on the solved window; reject a zero just beyond theta
    const double u_th = sol_.eval(theta);
    if (u_th <= 0.0)
      raise(ErrorKind::Borderline, "trajectory not certifiably positive at theta");
    const double v_th = sol_.eval_deriv(theta);
    if (v_th < 0.0 && theta + u_th / (-v_th) < theta + b)
      raise(ErrorKind::Borderline,
            "extrapolated zero within tolerance of theta = " + fmt(theta));
  }
  if (t == 0.0) return ExtendedNonNeg::finite(0.0);
  if (t == 1.0) return ExtendedNonNeg::finite(1.0);
  return ExtendedNonNeg::finite(sol_.eval(t * theta) / sol_.eval(theta));
}

// ---------------------------------------------------------------------------
// free functions
// ---------------------------------------------------------------------------

ExtendedNonNeg sigma(const CoefficientFn& kappa, double t, double theta,
                     const DistortionOptions& opts) {
  check_unit_time(t);
  if (theta < 0.0) raise(ErrorKind::InvalidArgument, "negative theta");
  if (theta == 0.0) return ExtendedNonNeg::finite(t);
  if (theta > kappa.length() * (1.0 + 1e-12))
    raise(ErrorKind::DomainMismatch, "theta beyond the coefficient domain");
  SigmaProfile profile(kappa, theta, opts, {t * theta});
  return profile.sigma(t, theta);
}

ExtendedNonNeg sigma_kN(const CoefficientFn& k, double N, double t, double theta,
                        const DistortionOptions& opts) {
  // the index only rescales the coefficient, and tau with N in (1,2) needs
  // fractional indices, so any positive N is admissible
  if (!(N > 0.0)) raise(ErrorKind::InvalidArgument, "N must be positive");
  return sigma(k.scaled(1.0 / N), t, theta, opts);
}

ExtendedNonNeg tau(const CoefficientFn& k, double N, double t, double theta,
                   const DistortionOptions& opts) {
  if (!(N >= 1.0)) raise(ErrorKind::InvalidArgument, "N must be >= 1");
  check_unit_time(t);
  if (theta < 0.0) raise(ErrorKind::InvalidArgument, "negative theta");
  if (theta == 0.0) return ExtendedNonNeg::finite(t);
  if (N == 1.0) {
    if (k.max_on(0.0, theta) > 0.0) return ExtendedNonNeg::infinity();
    return ExtendedNonNeg::finite(t);
  }
  const ExtendedNonNeg s = sigma_kN(k, N - 1.0, t, theta, opts);
  return std::pow(t, 1.0 / N) * s.pow((N - 1.0) / N);
}

TauEvaluator::TauEvaluator(const CoefficientFn& k, double N, double theta,
                           const DistortionOptions& opts,
                           const std::vector<double>& ts)
    : n_(N), theta_(theta) {
  if (!(N >= 1.0)) raise(ErrorKind::InvalidArgument, "N must be >= 1");
  if (theta < 0.0) raise(ErrorKind::InvalidArgument, "negative theta");
  if (theta == 0.0) {
    trivial_line_ = true;
    return;
  }
  if (N == 1.0) {
    if (k.max_on(0.0, theta) > 0.0)
      trivial_inf_ = true;
    else
      trivial_line_ = true;
    return;
  }
  std::vector<double> required;
  required.reserve(ts.size());
  for (double t : ts) required.push_back(t * theta);
  profile_.emplace(k.scaled(1.0 / (N - 1.0)), theta, opts, required);
}

ExtendedNonNeg TauEvaluator::at(double t) const {
  check_unit_time(t);
  if (trivial_line_) return ExtendedNonNeg::finite(t);
  if (trivial_inf_) return ExtendedNonNeg::infinity();
  const ExtendedNonNeg s = profile_->sigma(t, theta_);
  return std::pow(t, 1.0 / n_) * s.pow((n_ - 1.0) / n_);
}

SigmaLscReport sigma_lsc(const CurvatureField& k, const GeodesicSegment& segment,
                         double t, int n_max, double convergence_tol,
                         const DistortionOptions& opts, int grid_points) {
  check_unit_time(t);
  const double theta = segment.length();
  SigmaLscReport report;
  if (theta == 0.0) {
    report.value = ExtendedNonNeg::finite(t);
    report.converged = true;
    return report;
  }
  for (int n = 1; n <= n_max; n *= 2) {
    const CurvatureField kn = lipschitz_field(k, n, grid_points);
    const CoefficientFn along = restrict_along(kn, segment, grid_points + 1);
    report.ns.push_back(n);
    report.sequence.push_back(sigma(along, t, theta, opts));
    if (report.sequence.back().is_inf()) break;
  }
  report.value = report.sequence.back();
  if (report.value.is_inf()) {
    report.converged = true;
    report.last_increment = 0.0;
    return report;
  }
  if (report.sequence.size() >= 2) {
    const auto& prev = report.sequence[report.sequence.size() - 2];
    report.last_increment = prev.is_inf()
                                ? 0.0
                                : report.value.finite_value() - prev.finite_value();
  }
  report.converged = std::abs(report.last_increment) <= convergence_tol;
  if (!report.converged)
    raise(ErrorKind::NotConverged,
          "sigma_lsc increment " + fmt(report.last_increment) + " at n_max = " +
              std::to_string(n_max) + " exceeds " + fmt(convergence_tol));
  return report;
}

double taylor_residual(double kappa0, double t, double h,
                       const DistortionOptions& opts) {
  check_unit_time(t);
  if (!(h > 0.0)) raise(ErrorKind::InvalidArgument, "h must be positive");
  if (!(t > 0.0)) raise(ErrorKind::InvalidArgument, "taylor residual needs t > 0");
  const CoefficientFn kappa = CoefficientFn::constant(kappa0, h);
  const ExtendedNonNeg s = sigma(kappa, t, h, opts);
  return (s.finite_value() - t) / (t * h * h);
}

ExtendedNonNeg boundary_value_combination(const CoefficientFn& kappa,
                                          double theta, double a, double b,
                                          double t,
                                          const DistortionOptions& opts) {
  if (!(a >= 0.0 && b >= 0.0))
    raise(ErrorKind::InvalidArgument, "boundary values must be nonnegative");
  check_unit_time(t);
  const CoefficientFn fwd =
      theta < kappa.length() ? kappa.restricted(0.0, theta) : kappa;
  const CoefficientFn rev = fwd.reversed();
  const ExtendedNonNeg s_rev = sigma(rev, 1.0 - t, theta, opts);
  const ExtendedNonNeg s_fwd = sigma(fwd, t, theta, opts);
  return a * s_rev + b * s_fwd;
}

}  // namespace cdv
