// End-to-end checks of the command-line tool: exit codes and deterministic
// artifacts. The binary path comes in through CDV_CLI.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

int run(const std::string& args) {
  const std::string cmd = std::string(CDV_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("cd command passes on the certified model space") {
  spit("/tmp/cdv_cd.cfg",
       "[run]\n"
       "command = cd\n"
       "output = /tmp/cdv_cd_report.json\n"
       "[space]\n"
       "kind = model\n"
       "a = 0.1\n"
       "b = 3.0415926535897931\n"
       "N = 3\n"
       "kappa = const:1\n"
       "u0 = 0.09983341664682815\n"
       "v0 = 0.9950041652780258\n"
       "grid = 1024\n"
       "[measures]\n"
       "mu0 = smooth:2.0,0.3\n"
       "mu1 = smooth:3.0,4.0\n"
       "[params]\n"
       "Q = 128\n"
       "tolerance = 4e-3\n"
       "t_grid = 0.25,0.5,0.75\n");
  CHECK(run("cd -c /tmp/cdv_cd.cfg") == 0);
  const std::string report = slurp("/tmp/cdv_cd_report.json");
  CHECK(report.find("\"verdict\": \"pass\"") != std::string::npos);
}

TEST_CASE("cd command flags an inflated field") {
  spit("/tmp/cdv_cd_bad.cfg",
       "[run]\n"
       "command = cd\n"
       "output = /tmp/cdv_cd_bad.json\n"
       "[space]\n"
       "kind = model\n"
       "a = 0.1\n"
       "b = 3.0415926535897931\n"
       "N = 3\n"
       "kappa = const:1\n"
       "u0 = 0.09983341664682815\n"
       "v0 = 0.9950041652780258\n"
       "grid = 1024\n"
       "[field]\n"
       "expr = const:2.5\n"
       "[measures]\n"
       "mu0 = uniform:0.30,0.32\n"
       "mu1 = uniform:2.30,2.32\n"
       "[params]\n"
       "Q = 128\n"
       "tolerance = 1e-3\n"
       "t_grid = 0.25,0.5,0.75\n");
  CHECK(run("cd -c /tmp/cdv_cd_bad.cfg") == 1);
}

TEST_CASE("subcritical schneider constants exit with a usage error") {
  spit("/tmp/cdv_sch.cfg",
       "[run]\n"
       "command = schneider\n"
       "[params]\n"
       "N = 2\n"
       "c = 0.25\n"  // exactly (N-1)/4
       "R = 1.0\n"
       "delta = 0.5\n");
  CHECK(run("schneider -c /tmp/cdv_sch.cfg") == 2);
}

TEST_CASE("borderline distortion queries exit with code 3") {
  spit("/tmp/cdv_queries.csv", "t,theta\n0.5,1.0\n");
  spit("/tmp/cdv_dist.cfg",
       "[run]\n"
       "command = distortion\n"
       "[space]\n"
       "kind = lebesgue\n"
       "a = 0\n"
       "b = 2\n"
       "[field]\n"
       "expr = const:9.869604401089358\n"  // pi^2: first zero exactly at 1
       "[params]\n"
       "table = /tmp/cdv_queries.csv\n");
  CHECK(run("distortion -c /tmp/cdv_dist.cfg") == 3);
}

TEST_CASE("unknown config keys exit with a usage error") {
  spit("/tmp/cdv_bad.cfg", "[run]\ncommand = cd\nmystery = 1\n");
  CHECK(run("cd -c /tmp/cdv_bad.cfg") == 2);
  spit("/tmp/cdv_bad2.cfg", "[нет]\nx = 1\n");
  CHECK(run("cd -c /tmp/cdv_bad2.cfg") == 2);
}

TEST_CASE("identical config and seed produce byte-identical artifacts") {
  spit("/tmp/cdv_det.cfg",
       "[run]\n"
       "command = sin\n"
       "seed = 7\n"
       "csv_out = OUT\n"
       "output = REPORT\n"
       "[space]\n"
       "kind = lebesgue\n"
       "a = 0\n"
       "b = 3\n"
       "[field]\n"
       "expr = min(const:1,pow:2,-2,-0.5)\n");
  for (const char* tag : {"a", "b"}) {
    std::string cfg = slurp("/tmp/cdv_det.cfg");
    const std::string out = std::string("/tmp/cdv_det_") + tag + ".csv";
    const std::string rep = std::string("/tmp/cdv_det_") + tag + ".json";
    cfg.replace(cfg.find("OUT"), 3, out);
    cfg.replace(cfg.find("REPORT"), 6, rep);
    const std::string path = std::string("/tmp/cdv_det_") + tag + ".cfg";
    spit(path, cfg);
    REQUIRE(run(std::string("sin -c ") + path) == 0);
  }
  CHECK(slurp("/tmp/cdv_det_a.csv") == slurp("/tmp/cdv_det_b.csv"));
  CHECK(slurp("/tmp/cdv_det_a.csv").find("t,s,c") == 0);
}

TEST_CASE("bg command on the comparison model") {
  spit("/tmp/cdv_bg.cfg",
       "[run]\n"
       "command = bg\n"
       "[space]\n"
       "kind = model\n"
       "a = 0\n"
       "b = 3.141592653589793\n"
       "N = 3\n"
       "kappa = const:1\n"
       "grid = 1024\n"
       "[params]\n"
       "N = 3\n"
       "x0 = 0\n"
       "mode = constant\n"
       "kbar = 2\n"
       "r = 1\n"
       "R = 2\n");
  CHECK(run("bg -c /tmp/cdv_bg.cfg") == 0);
}

TEST_CASE("bm, doubling and tensor commands run end to end") {
  spit("/tmp/cdv_bm.cfg",
       "[run]\n"
       "command = bm\n"
       "[space]\n"
       "kind = lebesgue\n"
       "a = 0\n"
       "b = 1\n"
       "grid = 1024\n"
       "[field]\n"
       "expr = const:0\n"
       "[params]\n"
       "N = 1\n"
       "A0 = 0.0,0.1\n"
       "A1 = 0.9,1.0\n"
       "t_grid = 0.5\n");
  CHECK(run("bm -c /tmp/cdv_bm.cfg") == 0);

  spit("/tmp/cdv_dbl.cfg",
       "[run]\n"
       "command = doubling\n"
       "[space]\n"
       "kind = lebesgue\n"
       "a = 0\n"
       "b = 4\n"
       "grid = 1024\n"
       "[params]\n"
       "N = 1\n"
       "kbar = 0\n"
       "L = 4\n");
  CHECK(run("doubling -c /tmp/cdv_dbl.cfg") == 0);

  spit("/tmp/cdv_tensor.cfg",
       "[run]\n"
       "command = tensor\n"
       "[space]\n"
       "kind = lebesgue\n"
       "a = 0\n"
       "b = 1\n"
       "grid = 512\n"
       "[space2]\n"
       "kind = lebesgue\n"
       "a = 0\n"
       "b = 1\n"
       "grid = 512\n"
       "[measures]\n"
       "mu0 = smooth:3.0,0.4\n"
       "mu0_2 = smooth:2.0,1.0\n"
       "mu1 = smooth:5.0,2.1\n"
       "mu1_2 = smooth:4.0,5.5\n"
       "[params]\n"
       "Q = 32\n"
       "tolerance = 2e-2\n"
       "t_grid = 0.5\n");
  CHECK(run("tensor -c /tmp/cdv_tensor.cfg") == 0);
}

TEST_CASE("convexity command checks a sampled function") {
  // u = sin on [0, pi] sampled to CSV; holds for kappa = 1, fails for 1.3
  std::ostringstream csv;
  csv << "s,value\n";
  for (int i = 0; i < 64; ++i) {
    const double s = 3.141592653589793 * i / 63;
    csv << s << "," << std::sin(s) << "\n";
  }
  spit("/tmp/cdv_u.csv", csv.str());
  const char* base =
      "[run]\n"
      "command = convexity\n"
      "[space]\n"
      "kind = lebesgue\n"
      "a = 0\n"
      "b = 3.141592653589793\n"
      "[field]\n"
      "expr = const:%s\n"
      "[params]\n"
      "u = /tmp/cdv_u.csv\n"
      "tolerance = 1e-3\n";
  char cfg[512];
  std::snprintf(cfg, sizeof(cfg), base, "1");
  spit("/tmp/cdv_cvx_ok.cfg", cfg);
  CHECK(run("convexity -c /tmp/cdv_cvx_ok.cfg") == 0);
  std::snprintf(cfg, sizeof(cfg), base, "1.3");
  spit("/tmp/cdv_cvx_bad.cfg", cfg);
  CHECK(run("convexity -c /tmp/cdv_cvx_bad.cfg") == 1);
}

TEST_CASE("suite command prints its table and exits clean") {
  spit("/tmp/cdv_suite.cfg",
       "[run]\n"
       "command = suite\n"
       "seed = 20240808\n"
       "jobs = 2\n"
       "[params]\n"
       "only = 1,4,8\n");
  const std::string cmd = std::string(CDV_CLI) +
                          " suite -c /tmp/cdv_suite.cfg > /tmp/cdv_suite.txt 2>&1";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 0);
  const std::string table = slurp("/tmp/cdv_suite.txt");
  CHECK(table.find("[PASS]") != std::string::npos);
  CHECK(table.find("all checks passed") != std::string::npos);
}

TEST_CASE("help text enumerates the grammar") {
  const std::string cmd =
      std::string(CDV_CLI) + " --help > /tmp/cdv_help.txt 2>&1";
  const int status = std::system(cmd.c_str());
  (void)status;  // CLI11 exits nonzero-free on --help; text is what matters
  const std::string help = slurp("/tmp/cdv_help.txt");
  CHECK(help.find("const:<K>") != std::string::npos);
  CHECK(help.find("min(<e1>,<e2>)") != std::string::npos);
}
