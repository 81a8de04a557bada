#include "cdv/curvature_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cdv {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

double table_eval(const std::vector<double>& xs, const std::vector<double>& ks,
                  double x, bool lower) {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return ks.front();
  if (it == xs.end()) return ks.back();
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  if (lower) return std::min(ks[i - 1], ks[i]);
  const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return (1.0 - w) * ks[i - 1] + w * ks[i];
}

void check_table(const std::vector<double>& xs, const std::vector<double>& ks) {
  if (xs.size() < 2 || xs.size() != ks.size())
    raise(ErrorKind::InvalidArgument, "field table needs >= 2 samples");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1]))
      raise(ErrorKind::InvalidArgument, "field abscissae not strictly increasing");
  for (double v : ks)
    if (!std::isfinite(v))
      raise(ErrorKind::NonFiniteCoefficient, "non-finite field value");
}

}  // namespace

CurvatureField CurvatureField::constant(double value, double lo, double hi) {
  if (!std::isfinite(value))
    raise(ErrorKind::NonFiniteCoefficient, "constant field " + fmt(value));
  CurvatureField f;
  f.form_ = Form::Constant;
  f.lo_ = lo;
  f.hi_ = hi;
  f.constant_ = value;
  return f;
}

CurvatureField CurvatureField::radial_power(double a, double q, double pole,
                                            double lo, double hi,
                                            double exclusion, double shift) {
  CurvatureField f;
  f.form_ = Form::RadialPow;
  f.lo_ = lo;
  f.hi_ = hi;
  f.pow_a_ = a;
  f.pow_q_ = q;
  f.pow_pole_ = pole;
  f.pow_exclusion_ = exclusion;
  f.pow_shift_ = shift;
  return f;
}

CurvatureField CurvatureField::radial_table(double pole, std::vector<double> rs,
                                            std::vector<double> ks, double lo,
                                            double hi, bool lsc) {
  check_table(rs, ks);
  if (rs.front() < 0.0)
    raise(ErrorKind::InvalidArgument, "radial table with negative radius");
  CurvatureField f;
  f.form_ = Form::RadialTable;
  f.lo_ = lo;
  f.hi_ = hi;
  f.lsc_ = lsc;
  f.pow_pole_ = pole;
  f.tab_x_ = std::move(rs);
  f.tab_k_ = std::move(ks);
  return f;
}

CurvatureField CurvatureField::grid_table(std::vector<double> xs,
                                          std::vector<double> ks, bool lsc) {
  check_table(xs, ks);
  CurvatureField f;
  f.form_ = Form::GridTable;
  f.lo_ = xs.front();
  f.hi_ = xs.back();
  f.lsc_ = lsc;
  f.tab_x_ = std::move(xs);
  f.tab_k_ = std::move(ks);
  return f;
}

CurvatureField CurvatureField::min_of(const CurvatureField& a,
                                      const CurvatureField& b) {
  CurvatureField f;
  f.form_ = Form::Min;
  f.lo_ = std::max(a.lo_, b.lo_);
  f.hi_ = std::min(a.hi_, b.hi_);
  f.lsc_ = a.lsc_ || b.lsc_;
  f.min_a_ = std::make_shared<CurvatureField>(a);
  f.min_b_ = std::make_shared<CurvatureField>(b);
  return f;
}

double CurvatureField::eval(double x) const {
  switch (form_) {
    case Form::Constant:
      return constant_;
    case Form::RadialPow: {
      const double d = std::abs(x - pow_pole_);
      if (pow_q_ < 0.0 && d < pow_exclusion_)
        raise(ErrorKind::NonFiniteCoefficient,
              "radial power evaluated within exclusion radius of its pole");
      const double v = pow_a_ * std::pow(d, pow_q_) + pow_shift_;
      if (!std::isfinite(v))
        raise(ErrorKind::NonFiniteCoefficient,
              "radial power non-finite at x = " + fmt(x));
      return v;
    }
    case Form::RadialTable:
      return table_eval(tab_x_, tab_k_, std::abs(x - pow_pole_), lsc_);
    case Form::GridTable:
      return table_eval(tab_x_, tab_k_, x, lsc_);
    case Form::Min:
      return std::min(min_a_->eval(x), min_b_->eval(x));
  }
  return 0.0;
}

CurvatureField CurvatureField::shifted(double delta) const {
  CurvatureField f = *this;
  switch (form_) {
    case Form::Constant:
      f.constant_ += delta;
      break;
    case Form::RadialPow:
      f.pow_shift_ += delta;
      break;
    case Form::RadialTable:
    case Form::GridTable:
      for (double& v : f.tab_k_) v += delta;
      break;
    case Form::Min:
      f.min_a_ = std::make_shared<CurvatureField>(min_a_->shifted(delta));
      f.min_b_ = std::make_shared<CurvatureField>(min_b_->shifted(delta));
      break;
  }
  return f;
}

CurvatureField CurvatureField::scaled(double c) const {
  if (c < 0.0)
    raise(ErrorKind::InvalidArgument, "field scaling must be nonnegative");
  CurvatureField f = *this;
  switch (form_) {
    case Form::Constant:
      f.constant_ *= c;
      break;
    case Form::RadialPow:
      f.pow_a_ *= c;
      f.pow_shift_ *= c;
      break;
    case Form::RadialTable:
    case Form::GridTable:
      for (double& v : f.tab_k_) v *= c;
      break;
    case Form::Min:
      f.min_a_ = std::make_shared<CurvatureField>(min_a_->scaled(c));
      f.min_b_ = std::make_shared<CurvatureField>(min_b_->scaled(c));
      break;
  }
  return f;
}

CurvatureField CurvatureField::rescaled_distance(double alpha) const {
  if (!(alpha > 0.0))
    raise(ErrorKind::InvalidArgument, "distance rescaling must be positive");
  const double inv2 = 1.0 / (alpha * alpha);
  CurvatureField f = *this;
  f.lo_ = lo_ * alpha;
  f.hi_ = hi_ * alpha;
  switch (form_) {
    case Form::Constant:
      f.constant_ *= inv2;
      break;
    case Form::RadialPow:
      // a (d/alpha)^q / alpha^2
      f.pow_pole_ = pow_pole_ * alpha;
      f.pow_a_ = pow_a_ * std::pow(alpha, -pow_q_) * inv2;
      f.pow_shift_ = pow_shift_ * inv2;
      f.pow_exclusion_ = pow_exclusion_ * alpha;
      break;
    case Form::RadialTable:
      f.pow_pole_ = pow_pole_ * alpha;
      [[fallthrough]];
    case Form::GridTable:
      for (double& x : f.tab_x_) x *= alpha;
      for (double& v : f.tab_k_) v *= inv2;
      break;
    case Form::Min:
      f.min_a_ = std::make_shared<CurvatureField>(min_a_->rescaled_distance(alpha));
      f.min_b_ = std::make_shared<CurvatureField>(min_b_->rescaled_distance(alpha));
      break;
  }
  return f;
}

CurvatureField CurvatureField::restricted_domain(double lo, double hi) const {
  if (!(lo < hi) || lo < lo_ - 1e-12 || hi > hi_ + 1e-12)
    raise(ErrorKind::DomainMismatch, "field restriction outside domain");
  CurvatureField f = *this;
  f.lo_ = lo;
  f.hi_ = hi;
  return f;
}

std::vector<double> CurvatureField::coordinate_knots() const {
  std::vector<double> out;
  switch (form_) {
    case Form::Constant:
    case Form::RadialPow:
      break;
    case Form::RadialTable:
      for (double r : tab_x_) {
        out.push_back(pow_pole_ - r);
        out.push_back(pow_pole_ + r);
      }
      break;
    case Form::GridTable:
      out = tab_x_;
      break;
    case Form::Min: {
      out = min_a_->coordinate_knots();
      const auto more = min_b_->coordinate_knots();
      out.insert(out.end(), more.begin(), more.end());
      break;
    }
  }
  return out;
}

double CurvatureField::min_over_domain(int samples) const {
  double m = HUGE_VAL;
  for (int i = 0; i < samples; ++i) {
    const double x = lo_ + (hi_ - lo_) * i / std::max(1, samples - 1);
    m = std::min(m, eval(x));
  }
  return m;
}

std::string CurvatureField::describe() const {
  switch (form_) {
    case Form::Constant:
      return "const:" + fmt(constant_);
    case Form::RadialPow: {
      std::string s = "pow:" + fmt(pow_a_) + "," + fmt(pow_q_);
      if (pow_pole_ != 0.0) s += "," + fmt(pow_pole_);
      if (pow_shift_ != 0.0) s += "+" + fmt(pow_shift_);
      return s;
    }
    case Form::RadialTable:
      return "rtable[" + std::to_string(tab_x_.size()) + "]@" + fmt(pow_pole_);
    case Form::GridTable:
      return "table[" + std::to_string(tab_x_.size()) + "]";
    case Form::Min:
      return "min(" + min_a_->describe() + "," + min_b_->describe() + ")";
  }
  return "?";
}

double lipschitz_approx(const CurvatureField& k, int n, double x,
                        int grid_points) {
  if (grid_points <= 0)
    raise(ErrorKind::EmptyGrid, "lipschitz approximation over an empty grid");
  if (n <= 0) raise(ErrorKind::InvalidArgument, "lipschitz index must be positive");
  double best = k.eval(x);  // the y = x candidate keeps kappa_n <= k
  const double lo = k.lo(), hi = k.hi();
  for (int i = 0; i < grid_points; ++i) {
    const double y = lo + (hi - lo) * i / std::max(1, grid_points - 1);
    best = std::min(best, k.eval(y) + n * std::abs(x - y));
  }
  return best;
}

CurvatureField lipschitz_field(const CurvatureField& k, int n, int grid_points) {
  if (grid_points < 2) grid_points = 2;
  std::vector<double> xs(grid_points), ks(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    xs[i] = k.lo() + (k.hi() - k.lo()) * i / (grid_points - 1);
    ks[i] = k.eval(xs[i]);
  }
  // exact grid infimum by forward/backward distance-transform passes
  const double step = n * (k.hi() - k.lo()) / (grid_points - 1);
  for (int i = 1; i < grid_points; ++i) ks[i] = std::min(ks[i], ks[i - 1] + step);
  for (int i = grid_points - 2; i >= 0; --i)
    ks[i] = std::min(ks[i], ks[i + 1] + step);
  return CurvatureField::grid_table(std::move(xs), std::move(ks), false);
}

std::optional<CoefficientFn> CurvatureField::restrict_exact(
    const GeodesicSegment& segment) const {
  const double theta = segment.length();
  if (form_ == Form::Constant)
    return CoefficientFn::constant(constant_, theta);
  if (form_ != Form::RadialPow) return std::nullopt;

  const double seg_lo = std::min(segment.x0, segment.x1);
  const double seg_hi = std::max(segment.x0, segment.x1);
  const bool singular = pow_q_ < 0.0 || std::floor(pow_q_) != pow_q_;
  const double d0 = std::abs(segment.x0 - pow_pole_);
  const double d1 = std::abs(segment.x1 - pow_pole_);
  const double min_dist =
      (pow_pole_ >= seg_lo && pow_pole_ <= seg_hi) ? 0.0 : std::min(d0, d1);
  if (singular && min_dist < pow_exclusion_)
    raise(ErrorKind::PoleOnSegment,
          "segment passes within the exclusion radius of the pole at " +
              fmt(pow_pole_));
  if (pow_pole_ > seg_lo && pow_pole_ < seg_hi)
    return std::nullopt;  // distance kinks inside; sampled fallback

  // distance from the pole is affine in arclength: d(s) = d0 +/- s
  const bool away = d1 >= d0;
  if (away)
    return CoefficientFn::power_increasing(pow_a_, d0, pow_q_, theta, pow_shift_);
  return CoefficientFn::power_decreasing(pow_a_, d0, pow_q_, theta, pow_shift_);
}

CoefficientFn restrict_along(const CurvatureField& k,
                             const GeodesicSegment& segment, int samples) {
  const double theta = segment.length();
  if (theta == 0.0) return CoefficientFn::constant(k.eval(segment.x0), 0.0);

  if (auto exact = k.restrict_exact(segment)) return *exact;

  if (samples < 2) samples = 2;
  std::vector<double> ts(samples), ks(samples);
  for (int i = 0; i < samples; ++i) {
    ts[i] = theta * i / (samples - 1);
    ks[i] = k.eval(segment.at_arclength(ts[i]));
  }
  ts.back() = theta;
  return CoefficientFn::table(std::move(ts), std::move(ks));
}

CoefficientFn reverse(const CoefficientFn& kappa) { return kappa.reversed(); }

CoefficientFn radial_envelope(const CurvatureField& k, double x, double r_max,
                              int samples) {
  if (!(r_max > 0.0))
    raise(ErrorKind::InvalidArgument, "radial envelope needs r_max > 0");
  if (samples < 2) samples = 2;
  std::vector<double> rs;
  rs.reserve(samples + 8);
  for (int i = 0; i < samples; ++i) rs.push_back(r_max * i / (samples - 1));
  // land on the radii where a sphere point crosses a field kink
  for (double knot : k.coordinate_knots()) {
    const double r = std::abs(knot - x);
    if (r > 0.0 && r < r_max) rs.push_back(r);
  }
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end(),
                       [&](double a, double b) { return b - a < 1e-13 * r_max; }),
           rs.end());
  rs.back() = r_max;

  std::vector<double> ks;
  ks.reserve(rs.size());
  for (double r : rs) {
    const bool left = x - r >= k.lo() - 1e-12;
    const bool right = x + r <= k.hi() + 1e-12;
    if (!left && !right)
      raise(ErrorKind::EmptySphere, "sphere of radius " + fmt(r) + " around " +
                                        fmt(x) + " is empty");
    double v = HUGE_VAL;
    if (left) v = std::min(v, k.eval(std::max(x - r, k.lo())));
    if (right) v = std::min(v, k.eval(std::min(x + r, k.hi())));
    ks.push_back(v);
  }
  rs.front() = 0.0;
  return CoefficientFn::table(std::move(rs), std::move(ks));
}

}  // namespace cdv
