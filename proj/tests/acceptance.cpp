// Full verification run: one pass/fail line per criterion.
#include <cstdio>

#include "cdv/suite.hpp"

int main() {
  cdv::SuiteOptions opts;
  opts.jobs = 4;
  const auto results = cdv::run_suite(opts);
  bool all_ok = true;
  for (const auto& r : results) {
    std::printf("[%s] criterion %2d: %s (%.2f s)\n", r.pass ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.seconds);
    if (!r.detail.empty()) std::printf("         %s\n", r.detail.c_str());
    all_ok = all_ok && r.pass;
  }
  std::printf("%s\n", all_ok ? "all criteria passed" : "FAILURES present");
  return all_ok ? 0 : 1;
}
