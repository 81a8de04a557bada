#include "cdv/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cdv/numerics.hpp"

namespace cdv {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

// Certified-field construction: map a coefficient on [0, b-a] to a field on
// [a, b], preserving the closed form where possible.
CurvatureField field_from_coefficient(const CoefficientFn& kappa, double a,
                                      double b) {
  switch (kappa.form()) {
    case CoefficientFn::Form::Constant:
      return CurvatureField::constant(kappa.eval(0.0), a, b);
    case CoefficientFn::Form::Table: {
      std::vector<double> xs{a};
      std::vector<double> ks{kappa.eval(0.0)};
      for (double t : kappa.breakpoints()) {
        xs.push_back(a + t);
        ks.push_back(kappa.eval(t));
      }
      xs.push_back(b);
      ks.push_back(kappa.eval(b - a));
      return CurvatureField::grid_table(std::move(xs), std::move(ks), false);
    }
    case CoefficientFn::Form::PowerLaw: {
      // (t + A)^p with t = x - a is the distance from a pole at a - A;
      // (A - t)^p is the distance from a pole at a + A
      const auto pw = *kappa.power_params();
      const double pole = pw.decreasing ? a + pw.offset : a - pw.offset;
      return CurvatureField::radial_power(pw.a, pw.p, pole, a, b,
                                          /*exclusion=*/1e-6, pw.shift);
    }
  }
  return CurvatureField::constant(0.0, a, b);
}

}  // namespace

WeightedInterval::WeightedInterval(double a, double b,
                                   std::function<double(double)> weight,
                                   int grid_n)
    : a_(a), b_(b), grid_n_(grid_n), weight_(std::move(weight)) {
  if (!(a < b)) raise(ErrorKind::InvalidArgument, "interval needs a < b");
  if (grid_n < 16) raise(ErrorKind::InvalidArgument, "grid resolution too small");
  // positivity on the open interval; endpoint zeros are allowed
  for (int i = 0; i <= 64; ++i) {
    const double x = a + (b - a) * i / 64.0;
    const double w = weight_(x);
    if (!std::isfinite(w) || w < 0.0)
      raise(ErrorKind::InvalidArgument, "weight not finite/nonnegative at " + fmt(x));
    if (i > 0 && i < 64 && w == 0.0)
      raise(ErrorKind::ZeroWeight, "weight vanishes inside the interval at " + fmt(x));
  }
}

WeightedInterval WeightedInterval::lebesgue(double a, double b, int grid_n) {
  return WeightedInterval(a, b, [](double) { return 1.0; }, grid_n);
}

WeightedInterval WeightedInterval::from_samples(const std::vector<double>& xs,
                                                const std::vector<double>& ws,
                                                int grid_n) {
  if (xs.size() < 2 || xs.size() != ws.size())
    raise(ErrorKind::InvalidArgument, "weight table needs >= 2 samples");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1]))
      raise(ErrorKind::InvalidArgument, "weight abscissae not increasing");
  auto xs_copy = std::make_shared<std::vector<double>>(xs);
  auto ws_copy = std::make_shared<std::vector<double>>(ws);
  auto w = [xs_copy, ws_copy](double x) {
    const auto& t = *xs_copy;
    const auto& v = *ws_copy;
    auto it = std::upper_bound(t.begin(), t.end(), x);
    if (it == t.begin()) return v.front();
    if (it == t.end()) return v.back();
    const std::size_t i = static_cast<std::size_t>(it - t.begin());
    const double u = (x - t[i - 1]) / (t[i] - t[i - 1]);
    return (1.0 - u) * v[i - 1] + u * v[i];
  };
  return WeightedInterval(xs.front(), xs.back(), w, grid_n);
}

double WeightedInterval::weight(double x) const {
  const double slack = 1e-9 * std::max(1.0, b_ - a_);
  if (x < a_ - slack || x > b_ + slack)
    raise(ErrorKind::DomainMismatch, "weight evaluated outside the interval");
  return weight_(std::clamp(x, a_, b_));
}

double WeightedInterval::measure_of(double lo, double hi) const {
  lo = std::max(lo, a_);
  hi = std::min(hi, b_);
  if (hi <= lo) return 0.0;
  const int cells =
      std::max(16, static_cast<int>(grid_n_ * (hi - lo) / (b_ - a_)));
  return simpson([this](double x) { return weight_(x); }, lo, hi, cells);
}

double WeightedInterval::total_mass() const { return measure_of(a_, b_); }

void WeightedInterval::certify(CurvatureField field, double N) {
  if (!(N >= 1.0)) raise(ErrorKind::InvalidArgument, "certificate needs N >= 1");
  certified_ = CertifiedField{std::move(field), N};
}

std::string WeightedInterval::describe() const {
  std::string s = "[" + fmt(a_) + "," + fmt(b_) + "] grid=" + std::to_string(grid_n_);
  if (certified_)
    s += " certified CD(" + certified_->field.describe() + "," + fmt(certified_->N) + ")";
  return s;
}

WeightedInterval model_space(const CoefficientFn& kappa_ode, double N, double a,
                             double b, double u0, double v0, int grid_n,
                             bool scale_by_dim, const SolveOptions& opts) {
  if (!(N >= 1.0)) raise(ErrorKind::InvalidArgument, "model space needs N >= 1");
  const double span = b - a;
  if (std::abs(kappa_ode.length() - span) > 1e-9 * std::max(1.0, span))
    raise(ErrorKind::DomainMismatch, "coefficient length must equal b - a");
  auto sol = std::make_shared<SinSolution>(solve_ivp(kappa_ode, span, u0, v0, opts));
  // nonnegative solution on the whole interval; endpoint zeros hit the axis
  // only to solver accuracy, so the threshold scales with the solution size
  double scale = 0.0;
  for (double v : sol->values) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < sol->grid.size(); ++i) {
    if (sol->values[i] < -1e-9 * std::max(scale, 1e-12))
      raise(ErrorKind::NegativeSolution,
            "solution negative at t = " + fmt(sol->grid[i]));
  }
  const double exponent = N - 1.0;
  auto weight = [sol, a, exponent](double x) {
    const double u = std::max(sol->eval(x - a), 0.0);
    return exponent == 0.0 ? 1.0 : std::pow(u, exponent);
  };
  WeightedInterval space(a, b, weight, grid_n);
  CurvatureField field = field_from_coefficient(kappa_ode, a, b);
  space.certify(scale_by_dim ? field.scaled(N - 1.0) : field, N);
  return space;
}

double volume(const WeightedInterval& space, double x0, double r) {
  if (r < 0.0) raise(ErrorKind::InvalidArgument, "negative radius");
  if (r == 0.0) return 0.0;
  return space.measure_of(x0 - r, x0 + r);
}

double minkowski_content(const WeightedInterval& space, double x0, double r) {
  if (r < 0.0) raise(ErrorKind::InvalidArgument, "negative radius");
  double s = 0.0;
  if (x0 + r <= space.b()) s += space.weight(x0 + r);
  if (x0 - r >= space.a()) s += space.weight(x0 - r);
  return s;
}

Interval midpoint_set(const Interval& A0, const Interval& A1, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    raise(ErrorKind::InvalidArgument, "midpoint time outside [0,1]");
  return Interval{(1.0 - t) * A0.lo + t * A1.lo, (1.0 - t) * A0.hi + t * A1.hi};
}

WeightedInterval rescaled(const WeightedInterval& space, double alpha,
                          double beta) {
  if (!(alpha > 0.0 && beta > 0.0))
    raise(ErrorKind::InvalidArgument, "rescaling factors must be positive");
  auto base_weight = space.weight_fn();
  const double a = space.a(), b = space.b();
  auto w = [base_weight, alpha, beta, a, b](double x) {
    return beta / alpha * base_weight(std::clamp(x / alpha, a, b));
  };
  WeightedInterval out(alpha * a, alpha * b, w, space.grid_n());
  if (space.certified())
    out.certify(space.certified()->field.rescaled_distance(alpha),
                space.certified()->N);
  return out;
}

WeightedInterval restricted(const WeightedInterval& space, double lo, double hi) {
  if (lo < space.a() - 1e-12 || hi > space.b() + 1e-12 || !(lo < hi))
    raise(ErrorKind::DomainMismatch, "restriction outside the interval");
  const int grid = std::max(
      64, static_cast<int>(space.grid_n() * (hi - lo) / (space.b() - space.a())));
  WeightedInterval out(lo, hi, space.weight_fn(), grid);
  if (space.certified())
    out.certify(space.certified()->field.restricted_domain(lo, hi),
                space.certified()->N);
  return out;
}

}  // namespace cdv
