#ifndef CDV_TRANSPORT_HPP
#define CDV_TRANSPORT_HPP

#include <functional>
#include <memory>
#include <vector>

#include "cdv/spaces.hpp"

namespace cdv {

// Absolutely continuous probability measure on a weighted interval, given by
// its density rho against the space measure m = w dx. Cells of the CDF table
// follow the space grid plus any declared density breakpoints, integrated
// with two-point Gauss nodes so piecewise densities keep exact masses.
class Measure1D {
 public:
  Measure1D(std::shared_ptr<const WeightedInterval> space,
            std::function<double(double)> rho, double normalization_tol = 1e-8,
            const std::vector<double>& breakpoints = {});

  // divides a raw nonnegative density by its computed total mass
  static Measure1D normalized(std::shared_ptr<const WeightedInterval> space,
                              const std::function<double(double)>& raw,
                              const std::vector<double>& breakpoints = {});
  static Measure1D uniform_on(std::shared_ptr<const WeightedInterval> space,
                              double lo, double hi);

  const WeightedInterval& space() const { return *space_; }
  std::shared_ptr<const WeightedInterval> space_ptr() const { return space_; }
  double density(double x) const { return rho_(x); }
  double total_mass() const { return total_; }

  // inverse CDF at q in (0,1); monotone in q
  double quantile(double q) const;

  // integral of f(x, rho(x)) dm over the cell structure
  double integrate(const std::function<double(double, double)>& f) const;

 private:
  double cell_mass(double lo, double hi) const;

  std::shared_ptr<const WeightedInterval> space_;
  std::function<double(double)> rho_;
  std::vector<double> knots_;
  std::vector<double> cdf_;
  double total_ = 0.0;
  double normalization_tol_ = 1e-8;
};

// Monotone quantile coupling at midpoint levels q_j = (j - 1/2)/Q, with the
// finite-difference slope of the monotone map across neighboring quantiles.
struct Coupling {
  int Q = 0;
  std::vector<double> levels;
  std::vector<double> x0, x1;
  std::vector<double> slope;  // T' at x0_j
  std::vector<double> rho0, rho1;

  double theta(int j) const { return x1[j] >= x0[j] ? x1[j] - x0[j] : x0[j] - x1[j]; }
};

Coupling monotone_coupling(const Measure1D& mu0, const Measure1D& mu1, int Q);

// One time slice of the displacement interpolation: positions and densities
// of mu_t relative to m along each quantile ray.
struct PathSlice {
  double t = 0.0;
  int Q = 0;
  std::vector<double> levels, x0, x1, xt, rho;
};

PathSlice slice_at(const WeightedInterval& space, const Coupling& coupling,
                   double t);

PathSlice interpolate(const Measure1D& mu0, const Measure1D& mu1, double t,
                      int Q);

// Rows j, q, x_t, rho_t for CSV emission.
void append_slice_rows(const PathSlice& slice,
                       std::vector<std::vector<double>>& rows);

// Materializes a slice into a grid measure (piecewise-linear density through
// the Lagrangian points, half-cell extensions at the support edges).
Measure1D measure_from_slice(std::shared_ptr<const WeightedInterval> space,
                             const PathSlice& slice);

double wasserstein2(const Measure1D& mu0, const Measure1D& mu1, int Q = 1024);

// S_N = -int rho^{1 - 1/N} dm; the integrand vanishes where rho does.
double renyi_entropy(const Measure1D& mu, double N);

// Ent = int rho log rho dm
double shannon_entropy(const Measure1D& mu);

struct ProductPathSlice {
  PathSlice s1, s2;
  double density(int j, int l) const { return s1.rho[j] * s2.rho[l]; }
};

// Product interpolation of factorized marginals; the product coupling is
// optimal for the l^2 product metric.
ProductPathSlice product_interpolate(const Measure1D& mu0_1,
                                     const Measure1D& mu0_2,
                                     const Measure1D& mu1_1,
                                     const Measure1D& mu1_2, double t, int Q);

}  // namespace cdv

#endif
