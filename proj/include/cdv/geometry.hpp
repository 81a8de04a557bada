#ifndef CDV_GEOMETRY_HPP
#define CDV_GEOMETRY_HPP

#include <optional>
#include <string>
#include <vector>

#include "cdv/distortion.hpp"
#include "cdv/spaces.hpp"

namespace cdv {

// Comparison profile sin_{kappa/(N-1)}^{N-1} and its cumulative integral,
// built from one trajectory on [0, r_max].
class ComparisonProfile {
 public:
  ComparisonProfile(const CoefficientFn& comparison_coeff, double N,
                    double r_max, const SolveOptions& opts = {});

  double sin_value(double r) const;       // s_{kappa/(N-1)}(r), clamped at 0
  double sin_power(double r) const;       // sin_value^{N-1}
  double cumulative(double r) const;      // int_0^r sin_power
  std::optional<double> first_zero() const { return sol_.first_zero; }
  double N() const { return n_; }

 private:
  SinSolution sol_;
  double n_;
  double r_max_;
};

// int_0^r sin_{kappa/(N-1)}^{N-1} for constant kappa; BeyondConjugate when r
// exceeds pi sqrt((N-1)/(kappa v 0)).
double comparison_volume(double kappa, double N, double r,
                         const SolveOptions& opts = {});

struct BgMode {
  enum class Kind { ConstantBound, RadialEnvelope } kind = Kind::ConstantBound;
  double constant_bound = 0.0;

  static BgMode constant(double k) {
    return BgMode{Kind::ConstantBound, k};
  }
  static BgMode envelope() { return BgMode{Kind::RadialEnvelope, 0.0}; }
};

struct BgReport {
  double sphere_lhs = 0.0, sphere_rhs = 0.0, sphere_slack = 0.0;
  double ball_lhs = 0.0, ball_rhs = 0.0, ball_slack = 0.0;
  bool holds = false;
  double tolerance = 0.0;
};

// Sphere and ball volume-growth comparison around x0 at radii r < R. The
// envelope mode reads the certified field of the space.
BgReport bishop_gromov_check(const WeightedInterval& space, double x0, double N,
                             const BgMode& mode, double r, double R,
                             double tol = 1e-6, const SolveOptions& opts = {});

// 2^N for kbar >= 0, else 2^N c_{kbar/(N-1)}(L)^{N-1}.
double doubling_bound(double kbar, double N, double L,
                      const SolveOptions& opts = {});

// First zero of the comparison sin on [0, probe_max], infinity when absent.
ExtendedNonNeg effective_diameter(const CoefficientFn& k, double N,
                                  double probe_max,
                                  const DistortionOptions& opts = {});
ExtendedNonNeg effective_diameter(double k_const, double N, double probe_max,
                                  const DistortionOptions& opts = {});

// (R + delta) e^{pi / alpha} with alpha = sqrt(c/(N-1) - 1/4); SubcriticalC
// when c <= (N-1)/4.
double schneider_bound(double c, double N, double R, double delta);

struct SchneiderWitness {
  bool supercritical = false;
  double alpha = 0.0;                  // set when supercritical
  double max_closed_form_dev = 0.0;    // sup |numeric - closed form|
  std::optional<double> zero;          // located zero of the trajectory
  std::optional<double> zero_predicted;  // (eps + d)(1 - e^{-pi/alpha})
};

// Oscillation witness kappa(t) = (c/(N-1)) / (eps + d - t)^2 on [0, d]. The
// supercritical branch checks the numeric trajectory against the log-sin
// closed form and locates its interior zero; the subcritical branch verifies
// non-oscillation.
SchneiderWitness schneider_oscillation_witness(double c, double N, double d,
                                               double eps,
                                               const SolveOptions& opts = {});

struct BmReport {
  struct Row {
    double t = 0.0;
    double lhs = 0.0;   // m(A_t)^{1/N}
    double rhs = 0.0;   // tau-combination of endpoint masses
    double slack = 0.0;
    bool rhs_infinite = false;
  };
  std::vector<Row> rows;
  bool holds = false;
  double tolerance = 0.0;
};

// Brunn-Minkowski: m(A_t)^{1/N} against the infima of the tau coefficients
// over an endpoint-pair grid on A0 x A1.
BmReport brunn_minkowski_check(const WeightedInterval& space,
                               const CurvatureField& k, double N,
                               const Interval& A0, const Interval& A1,
                               const std::vector<double>& t_grid,
                               int pair_grid = 12, double tol = 1e-6,
                               const DistortionOptions& opts = {});

// Least-squares slope of log v(r) against log r over the given radii.
double fitted_volume_exponent(const WeightedInterval& space, double x0,
                              const std::vector<double>& radii);

}  // namespace cdv

#endif
