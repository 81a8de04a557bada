// Test-only oracles, independent of the library's solver path: closed forms
// for constant coefficients and a fixed-step RK4 integrator.
#ifndef CDV_TESTS_ORACLES_HPP
#define CDV_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

namespace oracle {

// s_K(t): sin(sqrt(K) t)/sqrt(K), t, or sinh(sqrt(-K) t)/sqrt(-K)
inline double sin_const(double K, double t) {
  if (K > 0.0) {
    const double r = std::sqrt(K);
    return std::sin(r * t) / r;
  }
  if (K < 0.0) {
    const double r = std::sqrt(-K);
    return std::sinh(r * t) / r;
  }
  return t;
}

inline double cos_const(double K, double t) {
  if (K > 0.0) return std::cos(std::sqrt(K) * t);
  if (K < 0.0) return std::cosh(std::sqrt(-K) * t);
  return 1.0;
}

// sigma^{(t)}(theta) for constant coefficient K, finite branch only
inline double sigma_const(double K, double t, double theta) {
  return sin_const(K, t * theta) / sin_const(K, theta);
}

// first zero of s_K, if any
inline std::optional<double> first_zero_const(double K) {
  if (K > 0.0) return M_PI / std::sqrt(K);
  return std::nullopt;
}

struct Rk4Result {
  std::vector<double> grid, u, v;
};

// Fixed-step classic RK4 for u'' + kappa(t) u = 0.
inline Rk4Result rk4(const std::function<double(double)>& kappa, double length,
                     double u0, double v0, int steps) {
  Rk4Result out;
  out.grid.reserve(steps + 1);
  out.u.reserve(steps + 1);
  out.v.reserve(steps + 1);
  double t = 0.0, u = u0, v = v0;
  out.grid.push_back(t);
  out.u.push_back(u);
  out.v.push_back(v);
  const double h = length / steps;
  auto f = [&](double tt, double uu, double vv, double& du, double& dv) {
    du = vv;
    dv = -kappa(tt) * uu;
  };
  for (int i = 0; i < steps; ++i) {
    double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
    f(t, u, v, k1u, k1v);
    f(t + h / 2, u + h / 2 * k1u, v + h / 2 * k1v, k2u, k2v);
    f(t + h / 2, u + h / 2 * k2u, v + h / 2 * k2v, k3u, k3v);
    f(t + h, u + h * k3u, v + h * k3v, k4u, k4v);
    u += h / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
    v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
    t = (i + 1) * h;
    out.grid.push_back(t);
    out.u.push_back(u);
    out.v.push_back(v);
  }
  return out;
}

// First positive zero located on the RK4 grid by linear interpolation of the
// bracketing cell.
inline std::optional<double> rk4_first_zero(
    const std::function<double(double)>& kappa, double length, int steps) {
  const Rk4Result r = rk4(kappa, length, 0.0, 1.0, steps);
  for (std::size_t i = 1; i + 1 < r.grid.size(); ++i) {
    if (r.u[i] > 0.0 && r.u[i + 1] <= 0.0) {
      const double w = r.u[i] / (r.u[i] - r.u[i + 1]);
      return r.grid[i] + w * (r.grid[i + 1] - r.grid[i]);
    }
  }
  return std::nullopt;
}

}  // namespace oracle

#endif
