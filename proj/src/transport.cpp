#include "cdv/transport.hpp"

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

constexpr double kWeightFloor = 1e-12;

}  // namespace

Measure1D::Measure1D(std::shared_ptr<const WeightedInterval> space,
                     std::function<double(double)> rho, double normalization_tol,
                     const std::vector<double>& breakpoints)
    : space_(std::move(space)),
      rho_(std::move(rho)),
      normalization_tol_(normalization_tol) {
  if (!space_) raise(ErrorKind::InvalidArgument, "measure needs a space");
  const int n = space_->grid_n();
  const double a = space_->a(), b = space_->b();
  knots_.reserve(n + 1 + breakpoints.size());
  for (int i = 0; i <= n; ++i) knots_.push_back(a + (b - a) * i / n);
  for (double brk : breakpoints)
    if (brk > a && brk < b) knots_.push_back(brk);
  std::sort(knots_.begin(), knots_.end());
  knots_.erase(std::unique(knots_.begin(), knots_.end(),
                           [&](double x, double y) {
                             return y - x < 1e-14 * (b - a);
                           }),
               knots_.end());
  knots_.front() = a;
  knots_.back() = b;

  cdf_.resize(knots_.size());
  cdf_[0] = 0.0;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
    cdf_[i + 1] = cdf_[i] + std::max(cell_mass(knots_[i], knots_[i + 1]), 0.0);
  total_ = cdf_.back();
}

double Measure1D::cell_mass(double lo, double hi) const {
  // two-point Gauss: interior nodes keep piecewise densities exact on cells
  // that do not straddle a breakpoint
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (lo + hi);
  const double offset = half / std::sqrt(3.0);
  auto f = [this](double x) {
    const double r = rho_(x);
    if (!(r >= 0.0) || !std::isfinite(r))
      raise(ErrorKind::InvalidArgument, "density not finite/nonnegative at " + fmt(x));
    return r * space_->weight(x);
  };
  return half * (f(mid - offset) + f(mid + offset));
}

double Measure1D::integrate(const std::function<double(double, double)>& f) const {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    const double half = 0.5 * (knots_[i + 1] - knots_[i]);
    const double mid = 0.5 * (knots_[i] + knots_[i + 1]);
    const double offset = half / std::sqrt(3.0);
    const double xl = mid - offset, xr = mid + offset;
    sum += half * (f(xl, rho_(xl)) + f(xr, rho_(xr)));
  }
  return sum;
}

Measure1D Measure1D::normalized(std::shared_ptr<const WeightedInterval> space,
                                const std::function<double(double)>& raw,
                                const std::vector<double>& breakpoints) {
  Measure1D probe(space, raw, HUGE_VAL, breakpoints);
  const double z = probe.total_mass();
  if (!(z > 0.0)) raise(ErrorKind::DegenerateMass, "raw density has zero mass");
  return Measure1D(space, [raw, z](double x) { return raw(x) / z; }, 1e-8,
                   breakpoints);
}

Measure1D Measure1D::uniform_on(std::shared_ptr<const WeightedInterval> space,
                                double lo, double hi) {
  if (!(lo < hi)) raise(ErrorKind::InvalidArgument, "empty uniform support");
  auto raw = [lo, hi](double x) { return x >= lo && x <= hi ? 1.0 : 0.0; };
  return normalized(std::move(space), raw, {lo, hi});
}

double Measure1D::quantile(double q) const {
  if (!(q > 0.0 && q < 1.0))
    raise(ErrorKind::InvalidArgument, "quantile level outside (0,1)");
  if (std::abs(total_ - 1.0) > normalization_tol_)
    raise(ErrorKind::DegenerateMass,
          "total mass " + fmt(total_) + " deviates from 1");
  const double target = q * total_;
  auto it = std::lower_bound(cdf_.begin(), cdf_.end(), target);
  std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
  if (i == 0) return knots_.front();
  --i;
  if (cdf_[i + 1] - cdf_[i] <= 0.0) return knots_[i];
  // bisection on the sub-cell Gauss mass
  double lo = knots_[i], hi = knots_[i + 1];
  const double want = target - cdf_[i];
  for (int iter = 0; iter < 60 && hi - lo > 1e-15 * (space_->b() - space_->a());
       ++iter) {
    const double mid = 0.5 * (lo + hi);
    (cell_mass(knots_[i], mid) < want ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Coupling monotone_coupling(const Measure1D& mu0, const Measure1D& mu1, int Q) {
  if (Q < 2) raise(ErrorKind::InvalidArgument, "need Q >= 2 quantiles");
  if (&mu0.space() != &mu1.space() &&
      (mu0.space().a() != mu1.space().a() || mu0.space().b() != mu1.space().b()))
    raise(ErrorKind::DomainMismatch, "measures live on different spaces");
  Coupling c;
  c.Q = Q;
  c.levels.resize(Q);
  c.x0.resize(Q);
  c.x1.resize(Q);
  c.slope.resize(Q);
  c.rho0.resize(Q);
  c.rho1.resize(Q);
  const auto& space = mu0.space();
  for (int j = 0; j < Q; ++j) {
    c.levels[j] = (j + 0.5) / Q;
    c.x0[j] = mu0.quantile(c.levels[j]);
    c.x1[j] = mu1.quantile(c.levels[j]);
    c.rho0[j] = mu0.density(c.x0[j]);
    c.rho1[j] = mu1.density(c.x1[j]);
  }
  for (int j = 0; j < Q; ++j) {
    // change-of-variables slope of the monotone map from the coupled
    // densities; where the target density degenerates fall back to the
    // finite difference across neighboring quantiles
    const double f0 = c.rho0[j] * space.weight(c.x0[j]);
    const double f1 = c.rho1[j] * space.weight(c.x1[j]);
    if (f1 > 1e-13 * std::max(1.0, f0)) {
      c.slope[j] = f0 / f1;
    } else {
      const int lo = std::max(0, j - 1), hi = std::min(Q - 1, j + 1);
      const double dx0 = c.x0[hi] - c.x0[lo];
      const double dx1 = c.x1[hi] - c.x1[lo];
      c.slope[j] = dx0 > 1e-13 ? std::max(dx1 / dx0, 1e-12) : 1.0;
    }
  }
  return c;
}

PathSlice slice_at(const WeightedInterval& space, const Coupling& coupling,
                   double t) {
  if (!(t >= 0.0 && t <= 1.0))
    raise(ErrorKind::InvalidArgument, "time outside [0,1]");
  PathSlice s;
  s.t = t;
  s.Q = coupling.Q;
  s.levels = coupling.levels;
  s.x0 = coupling.x0;
  s.x1 = coupling.x1;
  s.xt.resize(coupling.Q);
  s.rho.resize(coupling.Q);
  for (int j = 0; j < coupling.Q; ++j) {
    s.xt[j] = (1.0 - t) * coupling.x0[j] + t * coupling.x1[j];
    const double w0 = space.weight(coupling.x0[j]);
    const double wt = space.weight(s.xt[j]);
    if (w0 < kWeightFloor || wt < kWeightFloor)
      raise(ErrorKind::ZeroWeight,
            "weight vanishes along quantile ray " + std::to_string(j));
    const double stretch = (1.0 - t) + t * coupling.slope[j];
    s.rho[j] = coupling.rho0[j] * w0 / (stretch * wt);
  }
  return s;
}

PathSlice interpolate(const Measure1D& mu0, const Measure1D& mu1, double t,
                      int Q) {
  return slice_at(mu0.space(), monotone_coupling(mu0, mu1, Q), t);
}

Measure1D measure_from_slice(std::shared_ptr<const WeightedInterval> space,
                             const PathSlice& slice) {
  const int Q = slice.Q;
  auto xs = std::make_shared<std::vector<double>>(slice.xt);
  auto rs = std::make_shared<std::vector<double>>(slice.rho);
  // half-cell constant extensions recover the two half-quantile masses
  const double left_gap = Q > 1 ? 0.5 * ((*xs)[1] - (*xs)[0]) : 0.0;
  const double right_gap = Q > 1 ? 0.5 * ((*xs)[Q - 1] - (*xs)[Q - 2]) : 0.0;
  const double lo = std::max(space->a(), (*xs)[0] - left_gap);
  const double hi = std::min(space->b(), (*xs)[Q - 1] + right_gap);
  auto rho = [xs, rs, lo, hi](double x) -> double {
    const auto& t = *xs;
    if (x < lo || x > hi) return 0.0;
    if (x <= t.front()) return rs->front();
    if (x >= t.back()) return rs->back();
    auto it = std::upper_bound(t.begin(), t.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - t.begin());
    const double span = t[i] - t[i - 1];
    if (span <= 0.0) return (*rs)[i - 1];
    const double u = (x - t[i - 1]) / span;
    return (1.0 - u) * (*rs)[i - 1] + u * (*rs)[i];
  };
  std::vector<double> breakpoints{lo, hi};
  breakpoints.insert(breakpoints.end(), xs->begin(), xs->end());
  return Measure1D(std::move(space), rho, 4.0 / Q + 1e-6, breakpoints);
}

double wasserstein2(const Measure1D& mu0, const Measure1D& mu1, int Q) {
  double sum = 0.0;
  for (int j = 0; j < Q; ++j) {
    const double q = (j + 0.5) / Q;
    const double d = mu1.quantile(q) - mu0.quantile(q);
    sum += d * d;
  }
  return std::sqrt(sum / Q);
}

double renyi_entropy(const Measure1D& mu, double N) {
  if (!(N >= 1.0)) raise(ErrorKind::InvalidArgument, "N must be >= 1");
  const double expo = 1.0 - 1.0 / N;
  const auto& space = mu.space();
  return -mu.integrate([&](double x, double r) {
    return r > 0.0 ? std::pow(r, expo) * space.weight(x) : 0.0;
  });
}

double shannon_entropy(const Measure1D& mu) {
  const auto& space = mu.space();
  return mu.integrate([&](double x, double r) {
    return r > 0.0 ? r * std::log(r) * space.weight(x) : 0.0;
  });
}

void append_slice_rows(const PathSlice& slice,
                       std::vector<std::vector<double>>& rows) {
  for (int j = 0; j < slice.Q; ++j)
    rows.push_back({static_cast<double>(j), slice.levels[j], slice.xt[j],
                    slice.rho[j]});
}

ProductPathSlice product_interpolate(const Measure1D& mu0_1,
                                     const Measure1D& mu0_2,
                                     const Measure1D& mu1_1,
                                     const Measure1D& mu1_2, double t, int Q) {
  for (const Measure1D* m : {&mu0_1, &mu0_2, &mu1_1, &mu1_2}) {
    if (std::abs(m->total_mass() - 1.0) > 1e-6)
      raise(ErrorKind::NotFactorized,
            "factor marginals must each be probability measures");
  }
  ProductPathSlice out;
  out.s1 = interpolate(mu0_1, mu1_1, t, Q);
  out.s2 = interpolate(mu0_2, mu1_2, t, Q);
  return out;
}

}  // namespace cdv
