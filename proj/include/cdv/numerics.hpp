#ifndef CDV_NUMERICS_HPP
#define CDV_NUMERICS_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "cdv/errors.hpp"

namespace cdv {

// Cubic Hermite value on [t0,t1] from endpoint values and derivatives.
inline double hermite_value(double t, double t0, double t1, double y0,
                            double y1, double d0, double d1) {
  const double h = t1 - t0;
  if (h == 0.0) return y0;
  const double s = (t - t0) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 +
         (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * d1;
}

inline double hermite_derivative(double t, double t0, double t1, double y0,
                                 double y1, double d0, double d1) {
  const double h = t1 - t0;
  if (h == 0.0) return d0;
  const double s = (t - t0) / h;
  const double s2 = s * s;
  return ((6 * s2 - 6 * s) * y0 + (3 * s2 - 4 * s + 1) * h * d0 +
          (-6 * s2 + 6 * s) * y1 + (3 * s2 - 2 * s) * h * d1) /
         h;
}

// Quintic Hermite from values, first and second derivatives at both ends.
inline double quintic_value(double t, double t0, double t1, double y0,
                            double y1, double d0, double d1, double dd0,
                            double dd1) {
  const double h = t1 - t0;
  if (h == 0.0) return y0;
  const double s = (t - t0) / h;
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  const double h0 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
  const double h1 = s - 6 * s3 + 8 * s4 - 3 * s5;
  const double h2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
  const double h3 = 10 * s3 - 15 * s4 + 6 * s5;
  const double h4 = -4 * s3 + 7 * s4 - 3 * s5;
  const double h5 = 0.5 * s3 - s4 + 0.5 * s5;
  return y0 * h0 + h * d0 * h1 + h * h * dd0 * h2 + y1 * h3 + h * d1 * h4 +
         h * h * dd1 * h5;
}

inline double quintic_derivative(double t, double t0, double t1, double y0,
                                 double y1, double d0, double d1, double dd0,
                                 double dd1) {
  const double h = t1 - t0;
  if (h == 0.0) return d0;
  const double s = (t - t0) / h;
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s;
  const double g0 = -30 * s2 + 60 * s3 - 30 * s4;
  const double g1 = 1 - 18 * s2 + 32 * s3 - 15 * s4;
  const double g2 = s - 4.5 * s2 + 6 * s3 - 2.5 * s4;
  const double g3 = 30 * s2 - 60 * s3 + 30 * s4;
  const double g4 = -12 * s2 + 28 * s3 - 15 * s4;
  const double g5 = 1.5 * s2 - 4 * s3 + 2.5 * s4;
  return (y0 * g0 + h * d0 * g1 + h * h * dd0 * g2 + y1 * g3 + h * d1 * g4 +
          h * h * dd1 * g5) /
         h;
}

// Composite Simpson over [a,b] with n subintervals (n rounded up to even).
double simpson(const std::function<double(double)>& f, double a, double b,
               int n);

// Trapezoid rule over sampled values on a uniform grid.
double trapezoid(const std::vector<double>& values, double h);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

// Deterministic splitmix64 stream; avoids implementation-defined std
// distributions so seeded sweeps are reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

// Index-parallel map: each index writes only its own results, so the outcome
// is identical for any job count.
void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t)>& body);

}  // namespace cdv

#endif
