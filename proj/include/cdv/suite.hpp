#ifndef CDV_SUITE_HPP
#define CDV_SUITE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace cdv {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  std::uint64_t seed = 20240808;
  int jobs = 1;
  // empty runs everything; otherwise the listed criterion ids
  std::vector<int> only;
};

// Full verification run: ten oracle- and property-based checks covering the
// solver, the distortion algebra, the CD verifiers on model spaces, the
// volume-comparison bounds, the compactness witness, tensorization and the
// transport layer. Tolerances are fixed in code.
std::vector<CriterionResult> run_suite(const SuiteOptions& opts = {});

}  // namespace cdv

#endif
