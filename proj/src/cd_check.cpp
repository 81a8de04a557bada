#include "cdv/cd_check.hpp"

#include <algorithm>
#include <cmath>

#include "cdv/numerics.hpp"

namespace cdv {

namespace {

double inv_power(double rho, double N) {
  if (!(rho > 0.0))
    raise(ErrorKind::InvalidArgument, "density vanishes at a quantile point");
  return std::pow(rho, -1.0 / N);
}

std::vector<double> reversed_times(const std::vector<double>& ts) {
  std::vector<double> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(1.0 - t);
  return out;
}

void validate_times(const std::vector<double>& ts) {
  if (ts.empty()) raise(ErrorKind::InvalidArgument, "empty time grid");
  for (double t : ts)
    if (!(t > 0.0 && t < 1.0))
      raise(ErrorKind::InvalidArgument,
            "time grid must stay inside (0,1); endpoints hold trivially");
}

struct SlackMatrix {
  std::vector<std::vector<double>> values;  // [ti][j], -inf for infinite rhs

  void reduce(CdReport& report, const std::vector<double>& t_grid,
              bool collect) {
    report.worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t ti = 0; ti < values.size(); ++ti) {
      for (std::size_t j = 0; j < values[ti].size(); ++j) {
        const double s = values[ti][j];
        if (s == -std::numeric_limits<double>::infinity()) ++report.infinite_rhs;
        if (s < report.worst_slack) {
          report.worst_slack = s;
          report.worst_t = t_grid[ti];
          report.worst_j = static_cast<int>(j);
        }
        if (collect)
          report.slacks.push_back(
              SlackSample{t_grid[ti], static_cast<int>(j), s});
      }
    }
    report.pass = report.worst_slack >= -report.tolerance;
  }
};

}  // namespace

CdReport check_pointwise_cd(const WeightedInterval& space,
                            const CurvatureField& k, double N,
                            const Measure1D& mu0, const Measure1D& mu1,
                            const CdOptions& opts) {
  if (!(N >= 1.0)) raise(ErrorKind::InvalidArgument, "N must be >= 1");
  validate_times(opts.t_grid);

  CdReport report;
  report.condition = "CD";
  report.field_desc = k.describe();
  report.N = N;
  report.t_grid = opts.t_grid;
  report.Q = opts.Q;
  report.tolerance = opts.tolerance;

  const Coupling coupling = monotone_coupling(mu0, mu1, opts.Q);
  std::vector<PathSlice> slices;
  slices.reserve(opts.t_grid.size());
  for (double t : opts.t_grid) slices.push_back(slice_at(space, coupling, t));

  SlackMatrix slacks;
  slacks.values.assign(opts.t_grid.size(),
                       std::vector<double>(coupling.Q, 0.0));
  const auto one_minus = reversed_times(opts.t_grid);

  parallel_for(coupling.Q, opts.jobs, [&](std::size_t j) {
    const double theta = coupling.theta(static_cast<int>(j));
    const CoefficientFn forward = restrict_along(
        k, GeodesicSegment{coupling.x0[j], coupling.x1[j]}, opts.restrict_samples);
    const TauEvaluator tau_fwd(forward, N, theta, opts.distortion, opts.t_grid);
    const TauEvaluator tau_rev(forward.reversed(), N, theta, opts.distortion,
                               one_minus);
    const double p0 = inv_power(coupling.rho0[j], N);
    const double p1 = inv_power(coupling.rho1[j], N);
    for (std::size_t ti = 0; ti < opts.t_grid.size(); ++ti) {
      const double t = opts.t_grid[ti];
      const ExtendedNonNeg rhs =
          p0 * tau_rev.at(1.0 - t) + p1 * tau_fwd.at(t);
      const double lhs = inv_power(slices[ti].rho[j], N);
      slacks.values[ti][j] = rhs.is_inf()
                                 ? -std::numeric_limits<double>::infinity()
                                 : lhs - rhs.finite_value();
    }
  });
  slacks.reduce(report, opts.t_grid, opts.collect_slacks);
  return report;
}

CdReport check_reduced_cd(const WeightedInterval& space, const CurvatureField& k,
                          double N, const Measure1D& mu0, const Measure1D& mu1,
                          const CdOptions& opts) {
  if (!(N >= 1.0)) raise(ErrorKind::InvalidArgument, "N must be >= 1");
  validate_times(opts.t_grid);

  CdReport report;
  report.condition = "CD*";
  report.field_desc = k.describe();
  report.N = N;
  report.t_grid = opts.t_grid;
  report.Q = opts.Q;
  report.tolerance = opts.tolerance;

  const Coupling coupling = monotone_coupling(mu0, mu1, opts.Q);
  std::vector<PathSlice> slices;
  for (double t : opts.t_grid) slices.push_back(slice_at(space, coupling, t));

  SlackMatrix slacks;
  slacks.values.assign(opts.t_grid.size(), std::vector<double>(coupling.Q, 0.0));

  parallel_for(coupling.Q, opts.jobs, [&](std::size_t j) {
    const double theta = coupling.theta(static_cast<int>(j));
    const double p0 = inv_power(coupling.rho0[j], N);
    const double p1 = inv_power(coupling.rho1[j], N);
    std::optional<SigmaProfile> fwd, rev;
    if (theta > 0.0) {
      const CoefficientFn forward =
          restrict_along(k, GeodesicSegment{coupling.x0[j], coupling.x1[j]},
                         opts.restrict_samples);
      std::vector<double> req_f, req_r;
      for (double t : opts.t_grid) {
        req_f.push_back(t * theta);
        req_r.push_back((1.0 - t) * theta);
      }
      fwd.emplace(forward.scaled(1.0 / N), theta, opts.distortion, req_f);
      rev.emplace(forward.reversed().scaled(1.0 / N), theta, opts.distortion,
                  req_r);
    }
    for (std::size_t ti = 0; ti < opts.t_grid.size(); ++ti) {
      const double t = opts.t_grid[ti];
      const ExtendedNonNeg s_rev =
          theta > 0.0 ? rev->sigma(1.0 - t, theta) : ExtendedNonNeg::finite(1.0 - t);
      const ExtendedNonNeg s_fwd =
          theta > 0.0 ? fwd->sigma(t, theta) : ExtendedNonNeg::finite(t);
      const ExtendedNonNeg rhs = p0 * s_rev + p1 * s_fwd;
      const double lhs = inv_power(slices[ti].rho[j], N);
      slacks.values[ti][j] = rhs.is_inf()
                                 ? -std::numeric_limits<double>::infinity()
                                 : lhs - rhs.finite_value();
    }
  });
  slacks.reduce(report, opts.t_grid, opts.collect_slacks);
  return report;
}

CdReport check_entropy_cd(const WeightedInterval& space, const CurvatureField& k,
                          double N, const Measure1D& mu0, const Measure1D& mu1,
                          const std::vector<double>& Nprime_list,
                          const CdOptions& opts) {
  if (!(N >= 1.0)) raise(ErrorKind::InvalidArgument, "N must be >= 1");
  validate_times(opts.t_grid);
  if (Nprime_list.empty())
    raise(ErrorKind::InvalidArgument, "entropy check needs at least one N'");
  for (double np : Nprime_list)
    if (np < N - 1e-12)
      raise(ErrorKind::InvalidArgument, "entropy check requires N' >= N");

  CdReport report;
  report.condition = "CD-entropy";
  report.field_desc = k.describe();
  report.N = N;
  report.Nprime = Nprime_list;
  report.t_grid = opts.t_grid;
  report.Q = opts.Q;
  report.tolerance = opts.tolerance;
  report.worst_slack = std::numeric_limits<double>::infinity();

  const Coupling coupling = monotone_coupling(mu0, mu1, opts.Q);
  const auto one_minus = reversed_times(opts.t_grid);

  // per-ray tau evaluators for each N'
  std::vector<std::vector<ExtendedNonNeg>> rhs_sum(
      Nprime_list.size(),
      std::vector<ExtendedNonNeg>(opts.t_grid.size(), ExtendedNonNeg::finite(0.0)));
  std::vector<std::vector<std::vector<ExtendedNonNeg>>> per_ray(
      coupling.Q,
      std::vector<std::vector<ExtendedNonNeg>>(
          Nprime_list.size(),
          std::vector<ExtendedNonNeg>(opts.t_grid.size(),
                                      ExtendedNonNeg::finite(0.0))));

  parallel_for(coupling.Q, opts.jobs, [&](std::size_t j) {
    const double theta = coupling.theta(static_cast<int>(j));
    const CoefficientFn forward = restrict_along(
        k, GeodesicSegment{coupling.x0[j], coupling.x1[j]}, opts.restrict_samples);
    const CoefficientFn backward = forward.reversed();
    for (std::size_t ni = 0; ni < Nprime_list.size(); ++ni) {
      const double np = Nprime_list[ni];
      const TauEvaluator tau_fwd(forward, np, theta, opts.distortion, opts.t_grid);
      const TauEvaluator tau_rev(backward, np, theta, opts.distortion, one_minus);
      const double p0 = inv_power(coupling.rho0[j], np);
      const double p1 = inv_power(coupling.rho1[j], np);
      for (std::size_t ti = 0; ti < opts.t_grid.size(); ++ti) {
        const double t = opts.t_grid[ti];
        per_ray[j][ni][ti] = p0 * tau_rev.at(1.0 - t) + p1 * tau_fwd.at(t);
      }
    }
  });
  for (int j = 0; j < coupling.Q; ++j)
    for (std::size_t ni = 0; ni < Nprime_list.size(); ++ni)
      for (std::size_t ti = 0; ti < opts.t_grid.size(); ++ti)
        rhs_sum[ni][ti] = rhs_sum[ni][ti] + per_ray[j][ni][ti];

  auto space_ptr = mu0.space_ptr();
  for (std::size_t ti = 0; ti < opts.t_grid.size(); ++ti) {
    const double t = opts.t_grid[ti];
    const PathSlice slice = slice_at(space, coupling, t);
    const Measure1D mu_t = measure_from_slice(space_ptr, slice);
    for (std::size_t ni = 0; ni < Nprime_list.size(); ++ni) {
      const double np = Nprime_list[ni];
      const double entropy = renyi_entropy(mu_t, np);
      double slack;
      if (rhs_sum[ni][ti].is_inf()) {
        slack = -std::numeric_limits<double>::infinity();
        ++report.infinite_rhs;
      } else {
        const double rhs = -rhs_sum[ni][ti].finite_value() / coupling.Q;
        slack = rhs - entropy;
      }
      if (slack < report.worst_slack) {
        report.worst_slack = slack;
        report.worst_t = t;
        report.worst_j = -1;
      }
      if (opts.collect_slacks)
        report.slacks.push_back(SlackSample{t, static_cast<int>(ni), slack});
    }
  }
  report.pass = report.worst_slack >= -report.tolerance;
  return report;
}

CdReport check_cd_infinity(const WeightedInterval& space,
                           const CurvatureField& k, const Measure1D& mu0,
                           const Measure1D& mu1, const CdOptions& opts) {
  validate_times(opts.t_grid);
  CdReport report;
  report.condition = "CDinf";
  report.field_desc = k.describe();
  report.N = std::numeric_limits<double>::infinity();
  report.t_grid = opts.t_grid;
  report.Q = opts.Q;
  report.tolerance = opts.tolerance;
  report.worst_slack = std::numeric_limits<double>::infinity();

  const Coupling coupling = monotone_coupling(mu0, mu1, opts.Q);
  const double ent0 = shannon_entropy(mu0);
  const double ent1 = shannon_entropy(mu1);

  // per-ray Green-kernel curvature integrals, one value per time
  std::vector<std::vector<double>> corrections(
      opts.t_grid.size(), std::vector<double>(coupling.Q, 0.0));
  parallel_for(coupling.Q, opts.jobs, [&](std::size_t j) {
    const double theta = coupling.theta(static_cast<int>(j));
    if (theta == 0.0) return;
    const GeodesicSegment seg{coupling.x0[j], coupling.x1[j]};
    auto k_at = [&](double s) { return k.eval(seg.at_arclength(s * theta)); };
    for (std::size_t ti = 0; ti < opts.t_grid.size(); ++ti) {
      const double t = opts.t_grid[ti];
      auto left = [&](double s) { return s * (1.0 - t) * k_at(s); };
      auto right = [&](double s) { return t * (1.0 - s) * k_at(s); };
      const double integral =
          simpson(left, 0.0, t, 64) + simpson(right, t, 1.0, 64);
      corrections[ti][j] = integral * theta * theta;
    }
  });

  auto space_ptr = mu0.space_ptr();
  for (std::size_t ti = 0; ti < opts.t_grid.size(); ++ti) {
    const double t = opts.t_grid[ti];
    const PathSlice slice = slice_at(space, coupling, t);
    const double ent_t = shannon_entropy(measure_from_slice(space_ptr, slice));
    double correction = 0.0;
    for (int j = 0; j < coupling.Q; ++j) correction += corrections[ti][j];
    correction /= coupling.Q;
    const double slack = (1.0 - t) * ent0 + t * ent1 - correction - ent_t;
    if (slack < report.worst_slack) {
      report.worst_slack = slack;
      report.worst_t = t;
      report.worst_j = -1;
    }
    if (opts.collect_slacks)
      report.slacks.push_back(SlackSample{t, -1, slack});
  }
  report.pass = report.worst_slack >= -report.tolerance;
  return report;
}

WeightedMeasureResult check_weighted_measure(
    const WeightedInterval& space, const SampledFunction& V,
    const CoefficientFn& k_prime, double N_prime,
    const std::function<double(double)>& rho0,
    const std::function<double(double)>& rho1, const CdOptions& opts,
    double hypothesis_tol) {
  if (!(N_prime >= 0.0))
    raise(ErrorKind::InvalidArgument, "weight exponent must be nonnegative");
  if (!space.certified())
    raise(ErrorKind::InvalidArgument, "base space carries no certificate");
  if (std::abs(V.a - space.a()) > 1e-9 || std::abs(V.b - space.b()) > 1e-9)
    raise(ErrorKind::DomainMismatch, "potential domain must match the space");

  const ConvexityVerdict hypothesis = check_distortion_form(
      V, k_prime, GeodesicScope::AllGeodesics, 0.0, hypothesis_tol);
  if (!hypothesis.holds)
    raise(ErrorKind::HypothesisFailed,
          "V is not k'V-convex (worst residual " +
              std::to_string(hypothesis.worst_residual) + ")");

  // reweight by V^{N'}
  auto V_values = std::make_shared<std::vector<double>>(V.values);
  const double a = V.a, b = V.b;
  auto base_w = space.weight_fn();
  auto weight = [V_values, a, b, N_prime, base_w](double x) {
    const auto& vals = *V_values;
    const double pos = (x - a) / (b - a) * (vals.size() - 1);
    const std::size_t i =
        std::min(static_cast<std::size_t>(std::max(pos, 0.0)), vals.size() - 2);
    const double u = std::clamp(pos - i, 0.0, 1.0);
    const double v = (1.0 - u) * vals[i] + u * vals[i + 1];
    return base_w(x) * std::pow(std::max(v, 0.0), N_prime);
  };
  auto reweighted = std::make_shared<WeightedInterval>(space.a(), space.b(),
                                                       weight, space.grid_n());

  // field k + k'
  const CertifiedField& cert = *space.certified();
  CurvatureField sum_field = [&] {
    if (cert.field.form() == CurvatureField::Form::Constant &&
        k_prime.form() == CoefficientFn::Form::Constant)
      return CurvatureField::constant(cert.field.eval(space.a()) + k_prime.eval(0.0),
                                      space.a(), space.b());
    const int n = space.grid_n() + 1;
    std::vector<double> xs(n), ks(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = space.a() + (space.b() - space.a()) * i / (n - 1);
      ks[i] = cert.field.eval(xs[i]) + k_prime.eval(xs[i] - space.a());
    }
    xs.back() = space.b();
    return CurvatureField::grid_table(std::move(xs), std::move(ks), false);
  }();
  const double N_new = cert.N + N_prime;
  reweighted->certify(sum_field, N_new);

  const Measure1D m0 = Measure1D::normalized(reweighted, rho0);
  const Measure1D m1 = Measure1D::normalized(reweighted, rho1);
  CdReport rep = check_pointwise_cd(*reweighted, sum_field, N_new, m0, m1, opts);
  rep.condition = "CD-weighted";
  return WeightedMeasureResult{hypothesis, std::move(rep), *reweighted};
}

TensorReport check_tensorization(const ProductSpace& space,
                                 const Measure1D& mu0_1, const Measure1D& mu0_2,
                                 const Measure1D& mu1_1, const Measure1D& mu1_2,
                                 const CdOptions& opts) {
  validate_times(opts.t_grid);
  const auto& f1 = space.factor1();
  const auto& f2 = space.factor2();
  if (!f1.certified() || !f2.certified())
    raise(ErrorKind::InvalidArgument, "tensorization needs certified factors");
  const CurvatureField& k1 = f1.certified()->field;
  const CurvatureField& k2 = f2.certified()->field;
  const double N1 = f1.certified()->N, N2 = f2.certified()->N;
  const double N = N1 + N2;

  for (const Measure1D* m : {&mu0_1, &mu0_2, &mu1_1, &mu1_2})
    if (std::abs(m->total_mass() - 1.0) > 1e-6)
      raise(ErrorKind::NotFactorized,
            "factor marginals must each be probability measures");

  const Coupling c1 = monotone_coupling(mu0_1, mu1_1, opts.Q);
  const Coupling c2 = monotone_coupling(mu0_2, mu1_2, opts.Q);
  std::vector<PathSlice> s1, s2;
  for (double t : opts.t_grid) {
    s1.push_back(slice_at(f1, c1, t));
    s2.push_back(slice_at(f2, c2, t));
  }
  const auto one_minus = reversed_times(opts.t_grid);

  const bool const_fields = k1.form() == CurvatureField::Form::Constant &&
                            k2.form() == CurvatureField::Form::Constant;
  const double k1c = const_fields ? k1.eval(f1.a()) : 0.0;
  const double k2c = const_fields ? k2.eval(f2.a()) : 0.0;

  // factor tau evaluators, one pair per quantile index
  std::vector<std::optional<TauEvaluator>> t1f(opts.Q), t2f(opts.Q);
  for (int j = 0; j < opts.Q; ++j) {
    t1f[j].emplace(restrict_along(k1, GeodesicSegment{c1.x0[j], c1.x1[j]},
                                  opts.restrict_samples),
                   N1, c1.theta(j), opts.distortion, opts.t_grid);
    t2f[j].emplace(restrict_along(k2, GeodesicSegment{c2.x0[j], c2.x1[j]},
                                  opts.restrict_samples),
                   N2, c2.theta(j), opts.distortion, opts.t_grid);
  }

  TensorReport out;
  out.pointwise.condition = "CD-tensor";
  out.pointwise.field_desc = "min(" + k1.describe() + "," + k2.describe() + ")";
  out.pointwise.N = N;
  out.pointwise.t_grid = opts.t_grid;
  out.pointwise.Q = opts.Q;
  out.pointwise.tolerance = opts.tolerance;

  std::vector<std::vector<double>> slack_rows(
      opts.Q, std::vector<double>(opts.Q * opts.t_grid.size(), 0.0));
  std::vector<double> coeff_rows(opts.Q,
                                 std::numeric_limits<double>::infinity());

  parallel_for(opts.Q, opts.jobs, [&](std::size_t j) {
    const double th1 = c1.theta(static_cast<int>(j));
    const GeodesicSegment seg1{c1.x0[j], c1.x1[j]};
    for (int l = 0; l < opts.Q; ++l) {
      const double th2 = c2.theta(l);
      const GeodesicSegment seg2{c2.x0[l], c2.x1[l]};
      const double theta = std::hypot(th1, th2);

      CoefficientFn along = [&] {
        if (theta == 0.0) return CoefficientFn::constant(0.0, 0.0);
        if (const_fields)
          return CoefficientFn::constant(std::min(k1c, k2c), theta);
        const int samples = std::max(opts.restrict_samples, 3);
        std::vector<double> ts(samples), ks(samples);
        for (int s = 0; s < samples; ++s) {
          const double sigma = theta * s / (samples - 1);
          ts[s] = sigma;
          ks[s] = std::min(k1.eval(seg1.at_arclength(sigma * th1 / theta)),
                           k2.eval(seg2.at_arclength(sigma * th2 / theta)));
        }
        ts.back() = theta;
        return CoefficientFn::table(std::move(ts), std::move(ks));
      }();

      const TauEvaluator tau_fwd(along, N, theta, opts.distortion, opts.t_grid);
      const TauEvaluator tau_rev(along.reversed(), N, theta, opts.distortion,
                                 one_minus);
      const double r00 = c1.rho0[j] * c2.rho0[l];
      const double r11 = c1.rho1[j] * c2.rho1[l];
      const double p0 = inv_power(r00, N);
      const double p1 = inv_power(r11, N);
      for (std::size_t ti = 0; ti < opts.t_grid.size(); ++ti) {
        const double t = opts.t_grid[ti];
        const ExtendedNonNeg rhs = p0 * tau_rev.at(1.0 - t) + p1 * tau_fwd.at(t);
        const double lhs = inv_power(s1[ti].rho[j] * s2[ti].rho[l], N);
        slack_rows[j][ti * opts.Q + l] =
            rhs.is_inf() ? -std::numeric_limits<double>::infinity()
                         : lhs - rhs.finite_value();

        // coefficient inequality on this (theta1, theta2)
        const ExtendedNonNeg a1 = t1f[j]->at(t);
        const ExtendedNonNeg a2 = t2f[l]->at(t);
        const ExtendedNonNeg rhs_tau = tau_fwd.at(t);
        double cs;
        if (rhs_tau.is_inf()) {
          cs = (a1.is_inf() || a2.is_inf())
                   ? 0.0
                   : -std::numeric_limits<double>::infinity();
        } else if (a1.is_inf() || a2.is_inf()) {
          cs = std::numeric_limits<double>::infinity();
        } else {
          const double lhs_log = N1 * std::log(std::max(a1.finite_value(), 1e-300)) +
                                 N2 * std::log(std::max(a2.finite_value(), 1e-300));
          const double rhs_log = N * std::log(std::max(rhs_tau.finite_value(), 1e-300));
          const double rhs_val = std::exp(rhs_log);
          cs = (std::exp(lhs_log) - rhs_val) / std::max(1.0, rhs_val);
        }
        coeff_rows[j] = std::min(coeff_rows[j], cs);
      }
    }
  });

  out.pointwise.worst_slack = std::numeric_limits<double>::infinity();
  for (int j = 0; j < opts.Q; ++j) {
    for (std::size_t idx = 0; idx < slack_rows[j].size(); ++idx) {
      const double s = slack_rows[j][idx];
      if (s == -std::numeric_limits<double>::infinity())
        ++out.pointwise.infinite_rhs;
      if (s < out.pointwise.worst_slack) {
        out.pointwise.worst_slack = s;
        out.pointwise.worst_t = opts.t_grid[idx / opts.Q];
        out.pointwise.worst_j = j;
      }
    }
  }
  out.pointwise.pass = out.pointwise.worst_slack >= -opts.tolerance;
  out.worst_coefficient_slack = std::numeric_limits<double>::infinity();
  for (double c : coeff_rows)
    out.worst_coefficient_slack = std::min(out.worst_coefficient_slack, c);
  out.coefficient_claim_holds = out.worst_coefficient_slack >= -1e-9;
  return out;
}

CertifiedResult certify_pointwise_cd(const WeightedInterval& space,
                                     const CurvatureField& k, double N,
                                     const Measure1D& mu0, const Measure1D& mu1,
                                     const CdOptions& opts) {
  CertifiedResult result;
  result.at_q = check_pointwise_cd(space, k, N, mu0, mu1, opts);
  if (result.at_q.pass) {
    result.verdict = CdVerdict::Pass;
    return result;
  }
  CdOptions finer = opts;
  finer.Q = 2 * opts.Q;
  result.at_2q = check_pointwise_cd(space, k, N, mu0, mu1, finer);
  result.refined = true;
  result.verdict =
      result.at_2q.pass ? CdVerdict::Numerical : CdVerdict::Violated;
  return result;
}

double tensor_coefficient_slack(double k1, double N1, double theta1, double k2,
                                double N2, double theta2, double t,
                                const DistortionOptions& opts) {
  const double theta = std::hypot(theta1, theta2);
  const ExtendedNonNeg a1 =
      tau(CoefficientFn::constant(k1, std::max(theta1, 1e-300)), N1, t, theta1, opts);
  const ExtendedNonNeg a2 =
      tau(CoefficientFn::constant(k2, std::max(theta2, 1e-300)), N2, t, theta2, opts);
  const ExtendedNonNeg rhs =
      tau(CoefficientFn::constant(std::min(k1, k2), std::max(theta, 1e-300)),
          N1 + N2, t, theta, opts);
  if (rhs.is_inf())
    return (a1.is_inf() || a2.is_inf())
               ? 0.0
               : -std::numeric_limits<double>::infinity();
  if (a1.is_inf() || a2.is_inf()) return std::numeric_limits<double>::infinity();
  const double lhs = std::pow(a1.finite_value(), N1) * std::pow(a2.finite_value(), N2);
  const double rv = std::pow(rhs.finite_value(), N1 + N2);
  return (lhs - rv) / std::max(1.0, rv);
}

}  // namespace cdv
