#ifndef CDV_CONVEXITY_HPP
#define CDV_CONVEXITY_HPP

#include <functional>
#include <limits>
#include <vector>

#include "cdv/distortion.hpp"
#include "cdv/sturm.hpp"

namespace cdv {

// Function sampled on a uniform grid over [a, b]. Values may be +infinity
// for potentials fed to the (kappa, N)-convexity transform.
struct SampledFunction {
  double a = 0.0;
  double b = 1.0;
  std::vector<double> values;

  static SampledFunction from_function(double a, double b, int n,
                                       const std::function<double(double)>& f);

  std::size_t size() const { return values.size(); }
  double step() const { return (b - a) / (values.size() - 1); }
  double x_at(std::size_t i) const { return a + step() * i; }
  void validate() const;  // >= 16 samples, a < b
};

enum class GeodesicScope { AllGeodesics, ShortGeodesics };

struct ConvexityVerdict {
  bool holds = false;
  // worst residual, normalized by sup|u|; positive means violation
  double worst_residual = 0.0;
  double worst_s = 0.0;      // base point or sub-geodesic start
  double worst_theta = 0.0;  // sub-geodesic length where applicable
  double tolerance = 0.0;
  bool rhs_infinite = false;
};

// Discrete form of u'' + kappa u <= 0: centered second differences at the
// minimal grid step (optionally small multiples), plus kappa u, stay below
// tol. The residual floor of an exact solution is h^2/12 * |u''''|.
ConvexityVerdict check_distributional(const SampledFunction& u,
                                      const CoefficientFn& kappa,
                                      double tol = 1e-4,
                                      int max_step_multiple = 1);

// Green-kernel form: u(gamma_t) >= (1-t) u(gamma_0) + t u(gamma_1) +
// int_0^1 g(s,t) kappa(gamma_s) theta^2 u(gamma_s) ds over all grid
// sub-geodesics, g(s,t) = min{s(1-t), t(1-s)}.
ConvexityVerdict check_green(const SampledFunction& u, const CoefficientFn& kappa,
                             double tol = 1e-3);

// Distortion-coefficient form along grid sub-geodesics:
// u(gamma_t) >= sigma^{(1-t)}_{kappa^-} u(gamma_0) + sigma^{(t)}_{kappa^+}
// u(gamma_1), with the infinity conventions of the distortion module.
ConvexityVerdict check_distortion_form(const SampledFunction& u,
                                       const CoefficientFn& kappa,
                                       GeodesicScope scope,
                                       double max_length = 0.0,
                                       double tol = 1e-6,
                                       const DistortionOptions& opts = {});

// (kappa, N)-convexity of a potential f: u = exp(-f / N) must satisfy the
// distortion form with coefficient kappa / N. f = +infinity maps to u = 0.
ConvexityVerdict check_kappa_N_convex(const SampledFunction& f,
                                      const CoefficientFn& kappa, double N,
                                      double tol = 1e-6,
                                      const DistortionOptions& opts = {});

}  // namespace cdv

#endif
