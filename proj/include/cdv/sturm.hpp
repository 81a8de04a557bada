#ifndef CDV_STURM_HPP
#define CDV_STURM_HPP

#include <optional>
#include <string>
#include <vector>

#include "cdv/errors.hpp"

namespace cdv {

// Scalar coefficient kappa on [0, L] for the oscillator u'' + kappa u = 0.
// Three closed forms; power laws keep their singularity outside the domain,
// sample tables are piecewise linear with knots t0 = 0 < ... < tM = L.
class CoefficientFn {
 public:
  enum class Form { Constant, PowerLaw, Table };

  static CoefficientFn constant(double value, double length);
  // a * (offset - t)^p + shift on [0, length]
  static CoefficientFn power_decreasing(double a, double offset, double p,
                                        double length, double shift = 0.0);
  // a * (t + offset)^p + shift on [0, length]
  static CoefficientFn power_increasing(double a, double offset, double p,
                                        double length, double shift = 0.0);
  static CoefficientFn table(std::vector<double> ts, std::vector<double> ks);

  struct PowerLawParams {
    double a = 0.0, offset = 0.0, p = 0.0, shift = 0.0;
    bool decreasing = false;
  };

  Form form() const { return form_; }
  double length() const { return length_; }
  // closed-form parameters when the coefficient is a power law
  std::optional<PowerLawParams> power_params() const;
  double operator()(double t) const { return eval(t); }
  double eval(double t) const;

  // d kappa / dt at t; right-sided at table breakpoints.
  double slope(double t) const;

  // Interior knots where the evaluation rule changes slope.
  std::vector<double> breakpoints() const;

  // kappa(L - t); exact for all forms.
  CoefficientFn reversed() const;

  // c * kappa(t), same domain.
  CoefficientFn scaled(double c) const;

  // kappa(t) + delta, same domain.
  CoefficientFn shifted(double delta) const;

  // kappa(t0 + t) on [0, t1 - t0].
  CoefficientFn restricted(double t0, double t1) const;

  // s in [0,1] -> kappa(theta * s) * theta^2; requires theta <= length.
  CoefficientFn reparametrized(double theta) const;

  // (1-lambda) * this + lambda * other on the common domain. Exact for
  // constants and tables; power laws are sampled first.
  CoefficientFn lin_comb(const CoefficientFn& other, double lambda,
                         int samples = 513) const;

  CoefficientFn as_table(int samples = 513) const;

  double max_on(double t0, double t1, int samples = 257) const;
  double min_on(double t0, double t1, int samples = 257) const;

  std::string describe() const;

 private:
  CoefficientFn() = default;

  Form form_ = Form::Constant;
  double length_ = 0.0;
  double constant_ = 0.0;
  double pow_a_ = 0.0, pow_offset_ = 0.0, pow_p_ = 0.0, pow_shift_ = 0.0;
  bool pow_decreasing_ = false;
  std::vector<double> table_t_, table_k_;
};

struct SolveOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  // Abscissae the integrator lands on exactly (recorded in the grid).
  std::vector<double> required_points;
  bool detect_first_zero = false;
  // First-zero abscissa refinement tolerance, relative to L.
  double zero_refine_rel = 1e-12;
};

// Trajectory of u'' + kappa u = 0: values and derivatives on the accepted
// step grid, with u(0) = u0, u'(0) = v0. first_zero is the first t > 0 where
// the solution crosses zero from above, when detection was requested.
// accels holds u'' at the nodes; between nodes eval interpolates with the
// quintic Hermite through (u, u', u'') of both endpoints.
struct SinSolution {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> derivs;
  std::vector<double> accels;
  std::optional<double> first_zero;

  double length() const { return grid.empty() ? 0.0 : grid.back(); }
  double eval(double t) const;
  double eval_deriv(double t) const;
};

SinSolution solve_ivp(const CoefficientFn& kappa, double length, double u0,
                      double v0, const SolveOptions& opts = {});

// Generalized sin: u(0) = 0, u'(0) = 1, with first-zero detection.
SinSolution generalized_sin(const CoefficientFn& kappa, double length,
                            SolveOptions opts = {});

// Generalized cos: derivative channel of the generalized sin; values hold
// u' and derivs hold u'' = -kappa u.
SinSolution generalized_cos(const CoefficientFn& kappa, double length,
                            const SolveOptions& opts = {});

struct ComparisonReport {
  bool holds = false;
  double worst_gap = 0.0;  // min over the grid of s_kappa - s_kappa2
  double worst_at = 0.0;
  double tolerance = 0.0;
};

// Sturm comparison: kappa2 >= kappa pointwise and s_{kappa2} > 0 on (0,L]
// imply s_kappa >= s_{kappa2}. Verifies the conclusion on a shared grid.
ComparisonReport verify_sturm_comparison(const CoefficientFn& kappa,
                                         const CoefficientFn& kappa2,
                                         double length, double tol = 1e-9,
                                         const SolveOptions& opts = {});

}  // namespace cdv

#endif
