#ifndef CDV_CD_CHECK_HPP
#define CDV_CD_CHECK_HPP

#include <string>
#include <vector>

#include "cdv/convexity.hpp"
#include "cdv/distortion.hpp"
#include "cdv/transport.hpp"

namespace cdv {

struct CdOptions {
  std::vector<double> t_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  int Q = 512;
  double tolerance = 1e-3;
  int restrict_samples = 257;
  DistortionOptions distortion;
  bool collect_slacks = false;
  int jobs = 1;
};

struct SlackSample {
  double t = 0.0;
  int j = 0;
  double slack = 0.0;
};

struct CdReport {
  std::string condition;
  std::string field_desc;
  double N = 1.0;
  std::vector<double> Nprime;
  std::vector<double> t_grid;
  int Q = 0;
  double tolerance = 0.0;
  // minimum slack over all witnesses; -infinity when an infinite right-hand
  // side met a positive density power
  double worst_slack = 0.0;
  double worst_t = 0.0;
  int worst_j = -1;
  int infinite_rhs = 0;
  bool pass = false;
  std::vector<SlackSample> slacks;
};

// Pointwise density form along the monotone quantile coupling:
// rho_t(g_t)^{-1/N} >= tau^{(1-t)}_{k-,N} rho_0^{-1/N} + tau^{(t)}_{k+,N}
// rho_1^{-1/N} per ray and time.
CdReport check_pointwise_cd(const WeightedInterval& space,
                            const CurvatureField& k, double N,
                            const Measure1D& mu0, const Measure1D& mu1,
                            const CdOptions& opts = {});

// Entropy-integral form of the condition for each N' >= N.
CdReport check_entropy_cd(const WeightedInterval& space, const CurvatureField& k,
                          double N, const Measure1D& mu0, const Measure1D& mu1,
                          const std::vector<double>& Nprime_list,
                          const CdOptions& opts = {});

// Reduced form: sigma_{k,N} replaces tau on both sides.
CdReport check_reduced_cd(const WeightedInterval& space, const CurvatureField& k,
                          double N, const Measure1D& mu0, const Measure1D& mu1,
                          const CdOptions& opts = {});

// Infinite-dimensional form: displacement convexity of the Shannon entropy
// against the Green-kernel curvature integral.
CdReport check_cd_infinity(const WeightedInterval& space,
                           const CurvatureField& k, const Measure1D& mu0,
                           const Measure1D& mu1, const CdOptions& opts = {});

// Weighted-measure consequence: if V is strongly k'V-convex on a space
// certified CD(k, N), the space reweighted by V^{N'} is checked against
// CD(k + k', N + N'). HypothesisFailed when the convexity pre-check fails.
struct WeightedMeasureResult {
  ConvexityVerdict hypothesis;
  CdReport report;
  WeightedInterval reweighted;
};
WeightedMeasureResult check_weighted_measure(
    const WeightedInterval& space, const SampledFunction& V,
    const CoefficientFn& k_prime, double N_prime,
    const std::function<double(double)>& rho0,
    const std::function<double(double)>& rho1, const CdOptions& opts = {},
    double hypothesis_tol = 1e-4);

// Tensorization: pointwise CD on the product with field min(k1, k2) and
// dimension N1 + N2, plus the per-ray coefficient inequality
// tau_{k1,N1}(theta1)^{N1} tau_{k2,N2}(theta2)^{N2} >=
// tau_{min,N1+N2}(sqrt(theta1^2 + theta2^2))^{N1+N2}.
struct TensorReport {
  CdReport pointwise;
  double worst_coefficient_slack = 0.0;
  bool coefficient_claim_holds = false;
};
TensorReport check_tensorization(const ProductSpace& space,
                                 const Measure1D& mu0_1, const Measure1D& mu0_2,
                                 const Measure1D& mu1_1, const Measure1D& mu1_2,
                                 const CdOptions& opts = {});

// Runs a check at Q and, on failure, again at 2Q; a violation is certified
// only when both resolutions land beyond tolerance.
enum class CdVerdict { Pass, Violated, Numerical };
struct CertifiedResult {
  CdVerdict verdict = CdVerdict::Pass;
  CdReport at_q, at_2q;  // at_2q only populated when the first run failed
  bool refined = false;
};
CertifiedResult certify_pointwise_cd(const WeightedInterval& space,
                                     const CurvatureField& k, double N,
                                     const Measure1D& mu0, const Measure1D& mu1,
                                     const CdOptions& opts = {});

// Direct evaluation of the tensorization coefficient inequality on constants.
double tensor_coefficient_slack(double k1, double N1, double theta1, double k2,
                                double N2, double theta2, double t,
                                const DistortionOptions& opts = {});

}  // namespace cdv

#endif
