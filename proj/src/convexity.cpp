#include "cdv/convexity.hpp"

#include <algorithm>
#include <cmath>

namespace cdv {

namespace {

void check_domains(const SampledFunction& u, const CoefficientFn& kappa) {
  u.validate();
  const double span = u.b - u.a;
  if (std::abs(kappa.length() - span) > 1e-9 * std::max(1.0, span))
    raise(ErrorKind::DomainMismatch,
          "coefficient length does not match the sampled domain");
}

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v)
    if (std::isfinite(x)) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

SampledFunction SampledFunction::from_function(
    double a, double b, int n, const std::function<double(double)>& f) {
  SampledFunction s;
  s.a = a;
  s.b = b;
  s.values.resize(n);
  for (int i = 0; i < n; ++i) s.values[i] = f(a + (b - a) * i / (n - 1));
  s.validate();
  return s;
}

void SampledFunction::validate() const {
  if (values.size() < 16)
    raise(ErrorKind::InvalidArgument, "sampled function needs >= 16 points");
  if (!(a < b)) raise(ErrorKind::InvalidArgument, "sampled domain is empty");
}

ConvexityVerdict check_distributional(const SampledFunction& u,
                                      const CoefficientFn& kappa, double tol,
                                      int max_step_multiple) {
  check_domains(u, kappa);
  const std::size_t n = u.size();
  const double h = u.step();
  const double norm = std::max(sup_norm(u.values), 1e-300);

  ConvexityVerdict verdict;
  verdict.tolerance = tol;
  verdict.worst_residual = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const std::size_t reach = std::min<std::size_t>(
        {static_cast<std::size_t>(max_step_multiple), i, n - 1 - i});
    for (std::size_t m = 1; m <= reach; ++m) {
      const double step = m * h;
      const double second =
          (u.values[i - m] + u.values[i + m] - 2.0 * u.values[i]) / (step * step);
      const double residual =
          (second + kappa.eval(u.x_at(i) - u.a) * u.values[i]) / norm;
      if (residual > verdict.worst_residual) {
        verdict.worst_residual = residual;
        verdict.worst_s = u.x_at(i);
        verdict.worst_theta = 2.0 * step;
      }
    }
  }
  verdict.holds = verdict.worst_residual <= tol;
  return verdict;
}

ConvexityVerdict check_green(const SampledFunction& u, const CoefficientFn& kappa,
                             double tol) {
  check_domains(u, kappa);
  const std::size_t n = u.size();
  const double h = u.step();
  const double norm = std::max(sup_norm(u.values), 1e-300);

  // f_l = kappa(s_l) u(s_l) on the grid
  std::vector<double> f(n);
  for (std::size_t l = 0; l < n; ++l)
    f[l] = kappa.eval(u.x_at(l) - u.a) * u.values[l];

  ConvexityVerdict verdict;
  verdict.tolerance = tol;
  verdict.worst_residual = -std::numeric_limits<double>::infinity();

  std::vector<double> grow, decay;
  for (std::size_t i = 0; i + 2 < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      const std::size_t len = j - i;
      const double theta = len * h;
      // trapezoid prefix sums of s' f and (1 - s') f over [i, j] in the unit
      // parametrization; the Green kernel is linear between grid times
      grow.assign(len + 1, 0.0);
      decay.assign(len + 1, 0.0);
      for (std::size_t l = 1; l <= len; ++l) {
        const double sl = static_cast<double>(l) / len;
        const double sp = static_cast<double>(l - 1) / len;
        grow[l] = grow[l - 1] + 0.5 * (sp * f[i + l - 1] + sl * f[i + l]) / len;
        decay[l] = decay[l - 1] +
                   0.5 * ((1.0 - sp) * f[i + l - 1] + (1.0 - sl) * f[i + l]) / len;
      }
      for (std::size_t m = 1; m < len; ++m) {
        const double t = static_cast<double>(m) / len;
        const double integral =
            theta * theta * ((1.0 - t) * grow[m] + t * (decay[len] - decay[m]));
        const double rhs = (1.0 - t) * u.values[i] + t * u.values[j] + integral;
        const double residual = (rhs - u.values[i + m]) / norm;
        if (residual > verdict.worst_residual) {
          verdict.worst_residual = residual;
          verdict.worst_s = u.x_at(i);
          verdict.worst_theta = theta;
        }
      }
    }
  }
  verdict.holds = verdict.worst_residual <= tol;
  return verdict;
}

ConvexityVerdict check_distortion_form(const SampledFunction& u,
                                       const CoefficientFn& kappa,
                                       GeodesicScope scope, double max_length,
                                       double tol, const DistortionOptions& opts) {
  check_domains(u, kappa);
  const std::size_t n = u.size();
  const double h = u.step();
  const double span = u.b - u.a;
  const double limit =
      scope == GeodesicScope::AllGeodesics ? span + h : max_length;
  const double norm = std::max(sup_norm(u.values), 1e-300);

  // one forward profile per anchor i (coefficient from s_i rightward) and one
  // reversed profile per anchor j (from s_j leftward); every pair (i, j) then
  // reads its sigma values off the two shared trajectories
  std::vector<double> offsets(n);
  for (std::size_t l = 0; l < n; ++l) offsets[l] = l * h;

  std::vector<std::optional<SigmaProfile>> fwd(n), rev(n);
  for (std::size_t i = 0; i + 2 < n; ++i) {
    const double reach = std::min(span - offsets[i], limit);
    if (reach < 2.0 * h - 1e-12) continue;
    const auto cells = static_cast<std::size_t>((reach + 1e-12) / h);
    std::vector<double> req(offsets.begin(), offsets.begin() + cells + 1);
    fwd[i].emplace(kappa.restricted(offsets[i], std::min(offsets[i] + reach, span)),
                   req.back(), opts, req);
  }
  for (std::size_t j = 2; j < n; ++j) {
    const double reach = std::min(offsets[j], limit);
    if (reach < 2.0 * h - 1e-12) continue;
    const auto cells = static_cast<std::size_t>((reach + 1e-12) / h);
    std::vector<double> req(offsets.begin(), offsets.begin() + cells + 1);
    rev[j].emplace(kappa.restricted(offsets[j] - req.back(), offsets[j]).reversed(),
                   req.back(), opts, req);
  }

  ConvexityVerdict verdict;
  verdict.tolerance = tol;
  verdict.worst_residual = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 2 < n; ++i) {
    if (!fwd[i]) continue;
    for (std::size_t j = i + 2; j < n; ++j) {
      const double theta = (j - i) * h;
      if (theta > limit + 1e-12) break;
      if (!rev[j]) continue;
      for (std::size_t m = i + 1; m < j; ++m) {
        const double t = static_cast<double>(m - i) / (j - i);
        const ExtendedNonNeg rhs = u.values[i] * rev[j]->sigma(1.0 - t, theta) +
                                   u.values[j] * fwd[i]->sigma(t, theta);
        if (rhs.is_inf()) {
          verdict.rhs_infinite = true;
          verdict.worst_residual = std::numeric_limits<double>::infinity();
          verdict.worst_s = u.x_at(i);
          verdict.worst_theta = theta;
          verdict.holds = false;
          return verdict;
        }
        const double residual = (rhs.finite_value() - u.values[m]) / norm;
        if (residual > verdict.worst_residual) {
          verdict.worst_residual = residual;
          verdict.worst_s = u.x_at(i);
          verdict.worst_theta = theta;
        }
      }
    }
  }
  verdict.holds = verdict.worst_residual <= tol;
  return verdict;
}

ConvexityVerdict check_kappa_N_convex(const SampledFunction& f,
                                      const CoefficientFn& kappa, double N,
                                      double tol, const DistortionOptions& opts) {
  if (!(N >= 1.0)) raise(ErrorKind::InvalidArgument, "N must be >= 1");
  SampledFunction u = f;
  for (double& v : u.values) {
    if (std::isnan(v) || v == -std::numeric_limits<double>::infinity())
      raise(ErrorKind::InvalidArgument, "potential must avoid -infinity");
    v = v == std::numeric_limits<double>::infinity() ? 0.0 : std::exp(-v / N);
  }
  return check_distortion_form(u, kappa.scaled(1.0 / N),
                               GeodesicScope::AllGeodesics, 0.0, tol, opts);
}

}  // namespace cdv
