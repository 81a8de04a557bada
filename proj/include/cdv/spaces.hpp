#ifndef CDV_SPACES_HPP
#define CDV_SPACES_HPP

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "cdv/curvature_field.hpp"
#include "cdv/sturm.hpp"

namespace cdv {

struct CertifiedField {
  CurvatureField field;
  double N = 1.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// Metric measure space (I, |.|, w dx) on an interval. The weight is kept as
// a callable so quadrature sees the underlying function, with a uniform grid
// resolution steering quadrature and CDF cell counts.
class WeightedInterval {
 public:
  WeightedInterval(double a, double b, std::function<double(double)> weight,
                   int grid_n = 4096);

  static WeightedInterval lebesgue(double a, double b, int grid_n = 4096);
  static WeightedInterval from_samples(const std::vector<double>& xs,
                                       const std::vector<double>& ws,
                                       int grid_n = 4096);

  double a() const { return a_; }
  double b() const { return b_; }
  int grid_n() const { return grid_n_; }
  double distance(double x, double y) const { return std::abs(x - y); }
  double weight(double x) const;
  // the owning weight callable, for building derived spaces
  std::function<double(double)> weight_fn() const { return weight_; }

  // integral of w over [lo, hi] clipped to the interval (composite Simpson)
  double measure_of(double lo, double hi) const;
  double total_mass() const;

  const std::optional<CertifiedField>& certified() const { return certified_; }
  void certify(CurvatureField field, double N);

  std::string describe() const;

 private:
  double a_, b_;
  int grid_n_;
  std::function<double(double)> weight_;
  std::optional<CertifiedField> certified_;
};

// Model space on [a, b]: weight u^{N-1} where u solves u'' + kappa_ode u = 0
// with left data (u0, v0). The certified field is (N-1) kappa_ode by default;
// scale_by_dim = false certifies the bare kappa_ode instead.
WeightedInterval model_space(const CoefficientFn& kappa_ode, double N, double a,
                             double b, double u0, double v0, int grid_n = 4096,
                             bool scale_by_dim = true,
                             const SolveOptions& opts = {});

// m(closed ball of radius r around x0)
double volume(const WeightedInterval& space, double x0, double r);

// w(x0 + r) + w(x0 - r), terms outside the interval dropped
double minkowski_content(const WeightedInterval& space, double x0, double r);

// {(1 - t) x + t y : x in A0, y in A1}
Interval midpoint_set(const Interval& A0, const Interval& A1, double t);

// distances scaled by alpha, measure scaled by beta; the certified field
// picks up the alpha^{-2} factor
WeightedInterval rescaled(const WeightedInterval& space, double alpha,
                          double beta);

// restriction to [lo, hi] keeping weight and certificate
WeightedInterval restricted(const WeightedInterval& space, double lo, double hi);

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;
};

// Binary product with the l^2 product metric and product measure.
class ProductSpace {
 public:
  ProductSpace(WeightedInterval f1, WeightedInterval f2)
      : f1_(std::move(f1)), f2_(std::move(f2)) {}

  const WeightedInterval& factor1() const { return f1_; }
  const WeightedInterval& factor2() const { return f2_; }

  double distance(const Point2& p, const Point2& q) const {
    return std::hypot(p.x1 - q.x1, p.x2 - q.x2);
  }
  double total_mass() const { return f1_.total_mass() * f2_.total_mass(); }

 private:
  WeightedInterval f1_, f2_;
};

inline ProductSpace product(WeightedInterval s1, WeightedInterval s2) {
  return ProductSpace(std::move(s1), std::move(s2));
}

}  // namespace cdv

#endif
