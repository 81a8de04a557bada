#include "cdv/sturm.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>

#include "cdv/numerics.hpp"

namespace cdv {

namespace {

bool is_nonneg_integer(double p) {
  return p >= 0.0 && std::floor(p) == p;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace

CoefficientFn CoefficientFn::constant(double value, double length) {
  if (!std::isfinite(value))
    raise(ErrorKind::NonFiniteCoefficient, "constant coefficient " + fmt(value));
  if (!(length >= 0.0))
    raise(ErrorKind::InvalidArgument, "negative domain length");
  CoefficientFn k;
  k.form_ = Form::Constant;
  k.length_ = length;
  k.constant_ = value;
  return k;
}

CoefficientFn CoefficientFn::power_decreasing(double a, double offset, double p,
                                              double length, double shift) {
  CoefficientFn k;
  k.form_ = Form::PowerLaw;
  k.length_ = length;
  k.pow_a_ = a;
  k.pow_offset_ = offset;
  k.pow_p_ = p;
  k.pow_shift_ = shift;
  k.pow_decreasing_ = true;
  if (p != 0.0 && !is_nonneg_integer(p) && !(offset - length > 0.0))
    raise(ErrorKind::NonFiniteCoefficient,
          "power base (offset - t) not positive on [0," + fmt(length) + "]");
  return k;
}

CoefficientFn CoefficientFn::power_increasing(double a, double offset, double p,
                                              double length, double shift) {
  CoefficientFn k;
  k.form_ = Form::PowerLaw;
  k.length_ = length;
  k.pow_a_ = a;
  k.pow_offset_ = offset;
  k.pow_p_ = p;
  k.pow_shift_ = shift;
  k.pow_decreasing_ = false;
  if (p != 0.0 && !is_nonneg_integer(p) && !(offset > 0.0))
    raise(ErrorKind::NonFiniteCoefficient,
          "power base (t + offset) not positive on [0," + fmt(length) + "]");
  return k;
}

CoefficientFn CoefficientFn::table(std::vector<double> ts,
                                   std::vector<double> ks) {
  if (ts.size() < 2 || ts.size() != ks.size())
    raise(ErrorKind::InvalidArgument, "coefficient table needs >= 2 samples");
  if (ts.front() != 0.0)
    raise(ErrorKind::InvalidArgument, "coefficient table must start at t = 0");
  for (std::size_t i = 1; i < ts.size(); ++i)
    if (!(ts[i] > ts[i - 1]))
      raise(ErrorKind::InvalidArgument, "table abscissae not strictly increasing");
  for (double v : ks)
    if (!std::isfinite(v))
      raise(ErrorKind::NonFiniteCoefficient, "non-finite table value");
  CoefficientFn k;
  k.form_ = Form::Table;
  k.length_ = ts.back();
  k.table_t_ = std::move(ts);
  k.table_k_ = std::move(ks);
  return k;
}

double CoefficientFn::eval(double t) const {
  const double slack = 1e-9 * std::max(1.0, length_);
  if (t < -slack || t > length_ + slack)
    raise(ErrorKind::InvalidArgument,
          "coefficient evaluated at " + fmt(t) + " outside [0," + fmt(length_) + "]");
  t = std::clamp(t, 0.0, length_);
  switch (form_) {
    case Form::Constant:
      return constant_;
    case Form::PowerLaw: {
      const double base = pow_decreasing_ ? pow_offset_ - t : t + pow_offset_;
      const double v = pow_a_ * std::pow(base, pow_p_) + pow_shift_;
      if (!std::isfinite(v))
        raise(ErrorKind::NonFiniteCoefficient,
              "power law non-finite at t = " + fmt(t));
      return v;
    }
    case Form::Table: {
      auto it = std::upper_bound(table_t_.begin(), table_t_.end(), t);
      if (it == table_t_.begin()) return table_k_.front();
      if (it == table_t_.end()) return table_k_.back();
      const std::size_t i = static_cast<std::size_t>(it - table_t_.begin());
      const double t0 = table_t_[i - 1], t1 = table_t_[i];
      const double w = (t - t0) / (t1 - t0);
      return (1.0 - w) * table_k_[i - 1] + w * table_k_[i];
    }
  }
  return 0.0;
}

std::optional<CoefficientFn::PowerLawParams> CoefficientFn::power_params() const {
  if (form_ != Form::PowerLaw) return std::nullopt;
  return PowerLawParams{pow_a_, pow_offset_, pow_p_, pow_shift_, pow_decreasing_};
}

double CoefficientFn::slope(double t) const {
  t = std::clamp(t, 0.0, length_);
  switch (form_) {
    case Form::Constant:
      return 0.0;
    case Form::PowerLaw: {
      if (pow_p_ == 0.0) return 0.0;
      const double base = pow_decreasing_ ? pow_offset_ - t : t + pow_offset_;
      const double d = pow_a_ * pow_p_ * std::pow(base, pow_p_ - 1.0);
      return pow_decreasing_ ? -d : d;
    }
    case Form::Table: {
      auto it = std::upper_bound(table_t_.begin(), table_t_.end(), t);
      std::size_t i = static_cast<std::size_t>(it - table_t_.begin());
      if (i == 0) i = 1;
      if (i >= table_t_.size()) i = table_t_.size() - 1;
      return (table_k_[i] - table_k_[i - 1]) / (table_t_[i] - table_t_[i - 1]);
    }
  }
  return 0.0;
}

std::vector<double> CoefficientFn::breakpoints() const {
  if (form_ != Form::Table) return {};
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < table_t_.size(); ++i) out.push_back(table_t_[i]);
  return out;
}

CoefficientFn CoefficientFn::reversed() const {
  switch (form_) {
    case Form::Constant:
      return *this;
    case Form::PowerLaw: {
      // (offset - (L - t))^p = (t + (offset - L))^p and vice versa
      if (pow_decreasing_)
        return power_increasing(pow_a_, pow_offset_ - length_, pow_p_, length_,
                                pow_shift_);
      return power_decreasing(pow_a_, pow_offset_ + length_, pow_p_, length_,
                              pow_shift_);
    }
    case Form::Table: {
      std::vector<double> ts(table_t_.size()), ks(table_k_.size());
      for (std::size_t i = 0; i < table_t_.size(); ++i) {
        const std::size_t j = table_t_.size() - 1 - i;
        ts[i] = length_ - table_t_[j];
        ks[i] = table_k_[j];
      }
      ts.front() = 0.0;
      ts.back() = length_;
      return table(std::move(ts), std::move(ks));
    }
  }
  return *this;
}

CoefficientFn CoefficientFn::scaled(double c) const {
  CoefficientFn k = *this;
  switch (form_) {
    case Form::Constant:
      k.constant_ *= c;
      break;
    case Form::PowerLaw:
      k.pow_a_ *= c;
      k.pow_shift_ *= c;
      break;
    case Form::Table:
      for (double& v : k.table_k_) v *= c;
      break;
  }
  return k;
}

CoefficientFn CoefficientFn::shifted(double delta) const {
  CoefficientFn k = *this;
  switch (form_) {
    case Form::Constant:
      k.constant_ += delta;
      break;
    case Form::PowerLaw:
      k.pow_shift_ += delta;
      break;
    case Form::Table:
      for (double& v : k.table_k_) v += delta;
      break;
  }
  return k;
}

CoefficientFn CoefficientFn::restricted(double t0, double t1) const {
  const double slack = 1e-9 * std::max(1.0, length_);
  if (!(t0 >= -slack && t1 <= length_ + slack && t1 >= t0))
    raise(ErrorKind::DomainMismatch, "restriction outside coefficient domain");
  t0 = std::clamp(t0, 0.0, length_);
  t1 = std::clamp(t1, 0.0, length_);
  const double len = t1 - t0;
  switch (form_) {
    case Form::Constant:
      return constant(constant_, len);
    case Form::PowerLaw: {
      if (pow_decreasing_)
        return power_decreasing(pow_a_, pow_offset_ - t0, pow_p_, len, pow_shift_);
      return power_increasing(pow_a_, pow_offset_ + t0, pow_p_, len, pow_shift_);
    }
    case Form::Table: {
      if (len == 0.0) return constant(eval(t0), 0.0);
      std::vector<double> ts{0.0}, ks{eval(t0)};
      for (std::size_t i = 0; i < table_t_.size(); ++i) {
        if (table_t_[i] > t0 + 1e-15 && table_t_[i] < t1 - 1e-15) {
          ts.push_back(table_t_[i] - t0);
          ks.push_back(table_k_[i]);
        }
      }
      ts.push_back(len);
      ks.push_back(eval(t1));
      return table(std::move(ts), std::move(ks));
    }
  }
  return *this;
}

CoefficientFn CoefficientFn::reparametrized(double theta) const {
  if (!(theta > 0.0 && theta <= length_ * (1.0 + 1e-12)))
    raise(ErrorKind::InvalidArgument, "reparametrization length beyond domain");
  const double th2 = theta * theta;
  switch (form_) {
    case Form::Constant:
      return constant(constant_ * th2, 1.0);
    case Form::PowerLaw: {
      // a (offset - theta s)^p = a theta^p (offset/theta - s)^p
      const double a = pow_a_ * std::pow(theta, pow_p_) * th2;
      if (pow_decreasing_)
        return power_decreasing(a, pow_offset_ / theta, pow_p_, 1.0,
                                pow_shift_ * th2);
      return power_increasing(a, pow_offset_ / theta, pow_p_, 1.0,
                              pow_shift_ * th2);
    }
    case Form::Table: {
      std::vector<double> ts, ks;
      for (std::size_t i = 0; i < table_t_.size(); ++i) {
        if (table_t_[i] >= theta * (1.0 - 1e-15)) break;
        ts.push_back(table_t_[i] / theta);
        ks.push_back(table_k_[i] * th2);
      }
      ts.push_back(1.0);
      ks.push_back(eval(theta) * th2);
      return table(std::move(ts), std::move(ks));
    }
  }
  return *this;
}

CoefficientFn CoefficientFn::as_table(int samples) const {
  if (form_ == Form::Table) return *this;
  if (samples < 2) samples = 2;
  std::vector<double> ts(samples), ks(samples);
  for (int i = 0; i < samples; ++i) {
    ts[i] = length_ * i / (samples - 1);
    ks[i] = eval(ts[i]);
  }
  ts.back() = length_;
  return table(std::move(ts), std::move(ks));
}

CoefficientFn CoefficientFn::lin_comb(const CoefficientFn& other, double lambda,
                                      int samples) const {
  if (std::abs(length_ - other.length_) > 1e-12 * std::max(1.0, length_))
    raise(ErrorKind::DomainMismatch, "combining coefficients on different domains");
  if (form_ == Form::Constant && other.form_ == Form::Constant)
    return constant((1.0 - lambda) * constant_ + lambda * other.constant_, length_);
  // merge knots so piecewise-linear combinations stay exact
  std::vector<double> knots{0.0, length_};
  for (double b : breakpoints()) knots.push_back(b);
  for (double b : other.breakpoints()) knots.push_back(b);
  if (form_ == Form::PowerLaw || other.form_ == Form::PowerLaw) {
    for (int i = 1; i + 1 < samples; ++i)
      knots.push_back(length_ * i / (samples - 1));
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  std::vector<double> ks;
  ks.reserve(knots.size());
  for (double t : knots)
    ks.push_back((1.0 - lambda) * eval(t) + lambda * other.eval(t));
  return table(std::move(knots), std::move(ks));
}

double CoefficientFn::max_on(double t0, double t1, int samples) const {
  double m = -HUGE_VAL;
  for (int i = 0; i < samples; ++i) {
    const double t = t0 + (t1 - t0) * i / std::max(1, samples - 1);
    m = std::max(m, eval(t));
  }
  for (double b : breakpoints())
    if (b >= t0 && b <= t1) m = std::max(m, eval(b));
  return m;
}

double CoefficientFn::min_on(double t0, double t1, int samples) const {
  double m = HUGE_VAL;
  for (int i = 0; i < samples; ++i) {
    const double t = t0 + (t1 - t0) * i / std::max(1, samples - 1);
    m = std::min(m, eval(t));
  }
  for (double b : breakpoints())
    if (b >= t0 && b <= t1) m = std::min(m, eval(b));
  return m;
}

std::string CoefficientFn::describe() const {
  switch (form_) {
    case Form::Constant:
      return "const:" + fmt(constant_);
    case Form::PowerLaw: {
      std::string s = "pow:" + fmt(pow_a_) + (pow_decreasing_ ? ",dec," : ",inc,") +
                      fmt(pow_offset_) + "^" + fmt(pow_p_);
      if (pow_shift_ != 0.0) s += "+" + fmt(pow_shift_);
      return s;
    }
    case Form::Table:
      return "table[" + std::to_string(table_t_.size()) + "]";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4) for u'' + kappa u = 0
// ---------------------------------------------------------------------------

namespace {

struct State {
  double u, v;
};

constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kB5[7] = {35.0 / 384,      0.0,        500.0 / 1113,
                           125.0 / 192,     -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600,  0.0,           7571.0 / 16695,
                           393.0 / 640,     -92097.0 / 339200, 187.0 / 2100,
                           1.0 / 40};

struct Stepper {
  const CoefficientFn& kappa;
  double rtol, atol;

  double coeff(double t) const {
    const double k = kappa.eval(t);
    if (!std::isfinite(k))
      raise(ErrorKind::NonFiniteCoefficient, "coefficient non-finite during solve");
    return k;
  }

  // One trial step from (t, y) with size h. Returns the error norm and the
  // 5th order update.
  double trial(double t, const State& y, double h, State& out) const {
    double ku[7], kv[7];
    ku[0] = y.v;
    kv[0] = -coeff(t) * y.u;
    for (int s = 1; s < 7; ++s) {
      double du = 0.0, dv = 0.0;
      for (int j = 0; j < s; ++j) {
        du += kA[s][j] * ku[j];
        dv += kA[s][j] * kv[j];
      }
      const double ts = t + kC[s] * h;
      const double us = y.u + h * du;
      const double vs = y.v + h * dv;
      ku[s] = vs;
      kv[s] = -coeff(ts) * us;
    }
    double u5 = 0.0, v5 = 0.0, u4 = 0.0, v4 = 0.0;
    for (int s = 0; s < 7; ++s) {
      u5 += kB5[s] * ku[s];
      v5 += kB5[s] * kv[s];
      u4 += kB4[s] * ku[s];
      v4 += kB4[s] * kv[s];
    }
    out.u = y.u + h * u5;
    out.v = y.v + h * v5;
    const double eu = h * (u5 - u4);
    const double ev = h * (v5 - v4);
    const double su = atol + rtol * std::max(std::abs(y.u), std::abs(out.u));
    const double sv = atol + rtol * std::max(std::abs(y.v), std::abs(out.v));
    return std::sqrt(0.5 * ((eu / su) * (eu / su) + (ev / sv) * (ev / sv)));
  }

  // Integrate from t0 to t1 (t1 > t0), recording accepted steps.
  State advance(double t0, double t1, State y, SinSolution* out) const {
    double t = t0;
    const double span = t1 - t0;
    if (span <= 0.0) return y;
    const double k0 = std::max({1.0, std::abs(coeff(t0)), std::abs(coeff(t1))});
    double h = std::min(span, 0.1 / std::sqrt(k0));
    while (t < t1) {
      const double min_step = 32.0 * DBL_EPSILON * std::max(std::abs(t), 1.0);
      bool clipped = false;
      if (t + h >= t1) {
        h = t1 - t;
        clipped = true;
      }
      State next;
      const double err = trial(t, y, h, next);
      if (err <= 1.0) {
        t = clipped ? t1 : t + h;
        y = next;
        if (out) {
          out->grid.push_back(t);
          out->values.push_back(y.u);
          out->derivs.push_back(y.v);
          out->accels.push_back(-coeff(t) * y.u);
        }
        const double grow = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
        h *= std::clamp(grow, 0.2, 5.0);
      } else {
        h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        if (h < min_step)
          raise(ErrorKind::StepUnderflow,
                "step size underflow at t = " + fmt(t));
      }
    }
    return y;
  }

  // Value-only integration used for zero refinement probes.
  State probe(double t0, double t1, State y) const {
    return advance(t0, t1, y, nullptr);
  }
};

}  // namespace

namespace {

std::size_t locate_cell(const std::vector<double>& grid, double t) {
  auto it = std::lower_bound(grid.begin(), grid.end(), t);
  std::size_t i = static_cast<std::size_t>(it - grid.begin());
  if (i > 0 && (i == grid.size() || grid[i] != t)) --i;
  return i;
}

}  // namespace

double SinSolution::eval(double t) const {
  if (grid.empty()) raise(ErrorKind::InvalidArgument, "empty trajectory");
  const double slack = 1e-9 * std::max(1.0, grid.back());
  if (t < grid.front() - slack || t > grid.back() + slack)
    raise(ErrorKind::DomainMismatch, "trajectory evaluated outside its grid");
  t = std::clamp(t, grid.front(), grid.back());
  const std::size_t i = locate_cell(grid, t);
  if (i + 1 >= grid.size()) return values.back();
  if (accels.size() == grid.size())
    return quintic_value(t, grid[i], grid[i + 1], values[i], values[i + 1],
                         derivs[i], derivs[i + 1], accels[i], accels[i + 1]);
  return hermite_value(t, grid[i], grid[i + 1], values[i], values[i + 1],
                       derivs[i], derivs[i + 1]);
}

double SinSolution::eval_deriv(double t) const {
  if (grid.empty()) raise(ErrorKind::InvalidArgument, "empty trajectory");
  t = std::clamp(t, grid.front(), grid.back());
  const std::size_t i = locate_cell(grid, t);
  if (i + 1 >= grid.size()) return derivs.back();
  if (accels.size() == grid.size())
    return quintic_derivative(t, grid[i], grid[i + 1], values[i], values[i + 1],
                              derivs[i], derivs[i + 1], accels[i], accels[i + 1]);
  return hermite_derivative(t, grid[i], grid[i + 1], values[i], values[i + 1],
                            derivs[i], derivs[i + 1]);
}

namespace {

// Bisection refinement of a sign change inside one accepted step, probing by
// re-integration from the step's left state so accuracy is the solver's own.
double refine_zero(const Stepper& stepper, double t_lo, State y_lo, double t_hi,
                   double abs_tol, double* deriv_at_zero) {
  double lo = t_lo, hi = t_hi;
  for (int iter = 0; iter < 200 && hi - lo > abs_tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const State ym = stepper.probe(t_lo, mid, y_lo);
    if (ym.u > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double z = 0.5 * (lo + hi);
  const State yz = stepper.probe(t_lo, z, y_lo);
  if (deriv_at_zero) *deriv_at_zero = yz.v;
  return z;
}

}  // namespace

SinSolution solve_ivp(const CoefficientFn& kappa, double length, double u0,
                      double v0, const SolveOptions& opts) {
  if (!(length > 0.0))
    raise(ErrorKind::InvalidArgument, "solve needs positive length");
  if (length > kappa.length() * (1.0 + 1e-12))
    raise(ErrorKind::DomainMismatch, "solve length beyond coefficient domain");
  Stepper stepper{kappa, opts.rtol, opts.atol};

  // segment ends: breakpoints and required points, deduplicated
  std::vector<double> stops{length};
  for (double b : kappa.breakpoints())
    if (b > 0.0 && b < length) stops.push_back(b);
  for (double r : opts.required_points)
    if (r > 0.0 && r < length) stops.push_back(r);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end(),
                          [&](double a, double b) {
                            return std::abs(a - b) < 1e-14 * std::max(1.0, length);
                          }),
              stops.end());

  SinSolution sol;
  sol.grid.push_back(0.0);
  sol.values.push_back(u0);
  sol.derivs.push_back(v0);
  sol.accels.push_back(-kappa.eval(0.0) * u0);
  State y{u0, v0};
  double t = 0.0;
  for (double stop : stops) {
    y = stepper.advance(t, stop, y, &sol);
    t = stop;
  }

  if (opts.detect_first_zero) {
    // scan for the first positive -> nonpositive crossing after the start
    std::size_t start = 0;
    while (start < sol.values.size() && !(sol.values[start] > 0.0)) ++start;
    for (std::size_t i = start; i + 1 < sol.values.size(); ++i) {
      if (sol.values[i] > 0.0 && sol.values[i + 1] <= 0.0) {
        double dz = 0.0;
        const double z =
            refine_zero(stepper, sol.grid[i], State{sol.values[i], sol.derivs[i]},
                        sol.grid[i + 1], opts.zero_refine_rel * length, &dz);
        if (std::abs(dz) < 1e-8 * std::max(1.0, std::abs(v0)))
          raise(ErrorKind::NonUniqueness,
                "touching zero at t = " + fmt(z) + " contradicts IVP uniqueness");
        sol.first_zero = z;
        break;
      }
    }
  }
  return sol;
}

SinSolution generalized_sin(const CoefficientFn& kappa, double length,
                            SolveOptions opts) {
  opts.detect_first_zero = true;
  return solve_ivp(kappa, length, 0.0, 1.0, opts);
}

SinSolution generalized_cos(const CoefficientFn& kappa, double length,
                            const SolveOptions& opts) {
  SolveOptions o = opts;
  o.detect_first_zero = false;
  SinSolution sn = solve_ivp(kappa, length, 0.0, 1.0, o);
  SinSolution cs;
  cs.grid = sn.grid;
  cs.values = sn.derivs;
  cs.derivs = sn.accels;
  cs.accels.resize(sn.grid.size());
  // (u')'' = -kappa' u - kappa u'
  for (std::size_t i = 0; i < sn.grid.size(); ++i)
    cs.accels[i] = -kappa.slope(sn.grid[i]) * sn.values[i] -
                   kappa.eval(sn.grid[i]) * sn.derivs[i];
  return cs;
}

ComparisonReport verify_sturm_comparison(const CoefficientFn& kappa,
                                         const CoefficientFn& kappa2,
                                         double length, double tol,
                                         const SolveOptions& opts) {
  // precondition: kappa2 >= kappa on the evaluation grid
  const int order_samples = 512;
  for (int i = 0; i <= order_samples; ++i) {
    const double t = length * i / order_samples;
    if (kappa2.eval(t) < kappa.eval(t) - 1e-12)
      raise(ErrorKind::PreconditionOrderViolated,
            "kappa2 < kappa at t = " + fmt(t));
  }
  SinSolution s1 = generalized_sin(kappa, length, opts);
  SinSolution s2 = generalized_sin(kappa2, length, opts);
  if (s2.first_zero && *s2.first_zero <= length)
    raise(ErrorKind::PositivityViolated,
          "s_{kappa2} vanishes at t = " + fmt(*s2.first_zero));

  ComparisonReport report;
  report.tolerance = tol;
  report.worst_gap = HUGE_VAL;
  const int samples = 1024;
  for (int i = 0; i <= samples; ++i) {
    const double t = length * i / samples;
    const double gap = s1.eval(t) - s2.eval(t);
    if (gap < report.worst_gap) {
      report.worst_gap = gap;
      report.worst_at = t;
    }
  }
  report.holds = report.worst_gap >= -tol;
  return report;
}

}  // namespace cdv
