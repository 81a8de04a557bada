#ifndef CDV_CURVATURE_FIELD_HPP
#define CDV_CURVATURE_FIELD_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cdv/sturm.hpp"

namespace cdv {

// Affine geodesic segment in an interval space, unit-speed from x0 to x1.
struct GeodesicSegment {
  double x0 = 0.0;
  double x1 = 0.0;

  double length() const { return x1 >= x0 ? x1 - x0 : x0 - x1; }
  double direction() const { return x1 >= x0 ? 1.0 : -1.0; }
  // position after arclength s from x0
  double at_arclength(double s) const { return x0 + direction() * s; }
};

// Curvature lower-bound function on an interval [lo, hi]. Sample tables
// evaluate with lower-step interpolation when lsc is set (keeps the claimed
// bound on the safe side), linear interpolation otherwise.
class CurvatureField {
 public:
  enum class Form { Constant, RadialPow, RadialTable, GridTable, Min };

  static CurvatureField constant(double value, double lo, double hi);
  // a * d(pole, x)^q, with an exclusion radius around the pole for q < 0
  static CurvatureField radial_power(double a, double q, double pole, double lo,
                                     double hi, double exclusion = 1e-6,
                                     double shift = 0.0);
  // samples over distance from the pole, r ascending from 0
  static CurvatureField radial_table(double pole, std::vector<double> rs,
                                     std::vector<double> ks, double lo,
                                     double hi, bool lsc = false);
  // samples over the interval coordinate
  static CurvatureField grid_table(std::vector<double> xs,
                                   std::vector<double> ks, bool lsc = false);
  static CurvatureField min_of(const CurvatureField& a, const CurvatureField& b);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool lsc() const { return lsc_; }
  Form form() const { return form_; }

  double eval(double x) const;
  double operator()(double x) const { return eval(x); }

  CurvatureField shifted(double delta) const;
  CurvatureField scaled(double c) const;
  // field seen by the space with distances scaled by alpha: k'(alpha x) =
  // k(x) / alpha^2
  CurvatureField rescaled_distance(double alpha) const;
  CurvatureField restricted_domain(double lo, double hi) const;

  double min_over_domain(int samples = 4097) const;

  // Coordinates where the evaluation rule kinks (table knots, sphere images
  // of radial knots); empty for smooth forms.
  std::vector<double> coordinate_knots() const;

  // Exact restriction along a segment when the form allows it: constants,
  // and radial power laws whose pole is off the segment. Raises
  // PoleOnSegment when a singular pole lies on (or within the exclusion
  // radius of) the segment.
  std::optional<CoefficientFn> restrict_exact(const GeodesicSegment& segment) const;

  std::string describe() const;

 private:
  CurvatureField() = default;

  Form form_ = Form::Constant;
  double lo_ = 0.0, hi_ = 0.0;
  bool lsc_ = false;
  double constant_ = 0.0;
  double pow_a_ = 0.0, pow_q_ = 0.0, pow_pole_ = 0.0, pow_exclusion_ = 1e-6,
         pow_shift_ = 0.0;
  std::vector<double> tab_x_, tab_k_;  // radial: x is distance from pole
  std::shared_ptr<const CurvatureField> min_a_, min_b_;
};

// kappa_n(x) = inf over a dense domain grid (plus x itself) of
// k(y) + n d(x,y); never exceeds k(x) and is non-decreasing in n.
double lipschitz_approx(const CurvatureField& k, int n, double x,
                        int grid_points = 4096);

// kappa_n sampled to a grid-table field (continuous, n-Lipschitz).
CurvatureField lipschitz_field(const CurvatureField& k, int n,
                               int grid_points = 4096);

// k composed with the unit-speed parametrization of the segment. Exact for
// constant fields and for radial power laws whose pole is off the segment;
// other forms are sampled.
CoefficientFn restrict_along(const CurvatureField& k,
                             const GeodesicSegment& segment, int samples = 257);

// kappa(L - s); exact involution for every coefficient form.
CoefficientFn reverse(const CoefficientFn& kappa);

// Lower envelope over spheres around x: r in [0, r_max] maps to the minimum
// of k over the (at most two) sphere points, sampled on a uniform r grid.
CoefficientFn radial_envelope(const CurvatureField& k, double x, double r_max,
                              int samples = 1025);

}  // namespace cdv

#endif
