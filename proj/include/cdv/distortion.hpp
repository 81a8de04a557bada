#ifndef CDV_DISTORTION_HPP
#define CDV_DISTORTION_HPP

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cdv/curvature_field.hpp"
#include "cdv/sturm.hpp"

namespace cdv {

// Value in [0, infinity] with the distortion-coefficient conventions:
// r * inf = inf for r > 0, 0 * inf = 0, inf^a = inf for a > 0.
class ExtendedNonNeg {
 public:
  static ExtendedNonNeg finite(double v);
  static ExtendedNonNeg infinity() {
    ExtendedNonNeg x;
    x.inf_ = true;
    return x;
  }

  bool is_inf() const { return inf_; }
  // finite value; +inf double when infinite
  double value() const {
    return inf_ ? std::numeric_limits<double>::infinity() : v_;
  }
  double finite_value() const;  // raises on inf

  ExtendedNonNeg pow(double alpha) const;  // alpha > 0

  friend ExtendedNonNeg operator*(double r, const ExtendedNonNeg& x);
  friend ExtendedNonNeg operator*(const ExtendedNonNeg& a, const ExtendedNonNeg& b);
  friend ExtendedNonNeg operator+(const ExtendedNonNeg& a, const ExtendedNonNeg& b);

  // extended order, infinity on top
  bool operator<(const ExtendedNonNeg& o) const;
  bool operator<=(const ExtendedNonNeg& o) const;

  std::string str() const;

 private:
  double v_ = 0.0;
  bool inf_ = false;
};

struct DistortionOptions {
  SolveOptions solve;
  // infinity / finite certification band around theta, relative to theta
  double zero_band_rel = 1e-9;
};

// One solved trajectory of s_kappa on [0, max_length] exposing the ratio
// sigma^(t)(theta) = s(t theta) / s(theta) for any theta up to max_length.
// The verdict per theta follows the certification bands: infinite only when
// the detected first zero sits clearly before theta, finite only when the
// zero sits clearly after; the band in between raises Borderline.
class SigmaProfile {
 public:
  SigmaProfile(const CoefficientFn& kappa, double max_length,
               const DistortionOptions& opts = {},
               const std::vector<double>& required_points = {});

  ExtendedNonNeg sigma(double t, double theta) const;
  bool infinite_at(double theta) const;
  const SinSolution& solution() const { return sol_; }
  std::optional<double> first_zero() const { return sol_.first_zero; }

 private:
  double band(double theta) const;

  SinSolution sol_;
  double max_length_ = 0.0;
  double band_rel_ = 1e-9;
  double refine_abs_ = 0.0;
};

// sigma_kappa^(t)(theta): s_kappa(t theta)/s_kappa(theta) while s_kappa stays
// positive up to theta, infinity otherwise. sigma(0) = 0 and sigma(1) = 1
// exactly on the finite branch; theta = 0 returns t (the limit value).
ExtendedNonNeg sigma(const CoefficientFn& kappa, double t, double theta,
                     const DistortionOptions& opts = {});

// sigma with coefficient k/N.
ExtendedNonNeg sigma_kN(const CoefficientFn& k, double N, double t, double theta,
                        const DistortionOptions& opts = {});

// tau_{k,N}^(t)(theta) = t^{1/N} [sigma_{k,N-1}^(t)(theta)]^{(N-1)/N}; for
// N = 1 it is t when k <= 0 on [0,theta] and infinity otherwise (theta > 0).
ExtendedNonNeg tau(const CoefficientFn& k, double N, double t, double theta,
                   const DistortionOptions& opts = {});

// Batch tau evaluation sharing one trajectory per (k, N, theta).
class TauEvaluator {
 public:
  TauEvaluator(const CoefficientFn& k, double N, double theta,
               const DistortionOptions& opts = {},
               const std::vector<double>& ts = {});
  ExtendedNonNeg at(double t) const;

 private:
  double n_ = 1.0;
  double theta_ = 0.0;
  bool trivial_inf_ = false;   // N = 1 with k > 0 somewhere
  bool trivial_line_ = false;  // tau = t
  std::optional<SigmaProfile> profile_;
};

struct SigmaLscReport {
  ExtendedNonNeg value;
  std::vector<int> ns;
  std::vector<ExtendedNonNeg> sequence;  // one entry per n, non-decreasing
  double last_increment = 0.0;
  bool converged = false;
};

// Distortion coefficient for a lower semi-continuous field along a segment:
// the monotone limit over Lipschitz approximations kappa_n, n = 1,2,4,...
// Raises NotConverged when the final increment exceeds convergence_tol and
// the sequence has not reached infinity.
SigmaLscReport sigma_lsc(const CurvatureField& k, const GeodesicSegment& segment,
                         double t, int n_max = 1024,
                         double convergence_tol = 1e-3,
                         const DistortionOptions& opts = {},
                         int grid_points = 4096);

// (sigma_{kappa0}^(t)(h) - t) / (t h^2); tends to (1 - t^2) kappa0 / 6.
double taylor_residual(double kappa0, double t, double h,
                       const DistortionOptions& opts = {});

// v(t) = sigma_{kappa^-}^{(1-t)}(theta) a + sigma_{kappa^+}^{(t)}(theta) b,
// the boundary-value solution through (a, b).
ExtendedNonNeg boundary_value_combination(const CoefficientFn& kappa,
                                          double theta, double a, double b,
                                          double t,
                                          const DistortionOptions& opts = {});

}  // namespace cdv

#endif
