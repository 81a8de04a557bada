#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "cdv/config.hpp"
#include "cdv/csv.hpp"

using namespace cdv;

TEST_CASE("config parsing: sections, comments, lists") {
  auto cfg = Config::parse_text(
      "# experiment\n"
      "[run]\n"
      "command = cd\n"
      "seed = 42\n"
      "\n"
      "[params]\n"
      "t_grid = 0.25, 0.5, 0.75\n"
      "Q = 512\n");
  CHECK(cfg.get("run", "command") == "cd");
  CHECK(cfg.get_double("run", "seed") == 42.0);
  CHECK(cfg.get_int_or("params", "Q", 0) == 512);
  CHECK(cfg.get_list("params", "t_grid") == std::vector<double>{0.25, 0.5, 0.75});
  CHECK(cfg.get_or("params", "missing", "fallback") == "fallback");
}

TEST_CASE("config rejects malformed input") {
  CHECK_THROWS_AS(Config::parse_text("key = 1\n"), Error);           // no section
  CHECK_THROWS_AS(Config::parse_text("[run\n"), Error);              // unterminated
  CHECK_THROWS_AS(Config::parse_text("[run]\nnovalue\n"), Error);    // no '='
  CHECK_THROWS_AS(Config::parse_text("[run]\na=1\na=2\n"), Error);   // duplicate
}

TEST_CASE("unknown keys and sections are rejected against a schema") {
  auto cfg = Config::parse_text("[run]\ncommand = cd\nbogus = 1\n");
  CHECK_THROWS_AS(cfg.validate_keys({{"run", {"command"}}}), Error);
  auto cfg2 = Config::parse_text("[mystery]\nx = 1\n");
  CHECK_THROWS_AS(cfg2.validate_keys({{"run", {"command"}}}), Error);
}

TEST_CASE("field expressions round-trip through the canonical printer") {
  for (const std::string text :
       {"const:0", "const:-2.5", "pow:0.25,-2", "pow:1.5,-2,0.5",
        "min(const:1,pow:0.25,-2)"}) {
    auto first = parse_field_expr(text, 0.1, 3.0);
    auto second = parse_field_expr(first.canonical, 0.1, 3.0);
    CHECK(second.canonical == first.canonical);
    for (int i = 0; i <= 16; ++i) {
      const double x = 0.1 + (3.0 - 0.1) * i / 16.0;
      CHECK(second.field.eval(x) == doctest::Approx(first.field.eval(x)));
    }
  }
}

TEST_CASE("field expression errors carry positions") {
  CHECK_THROWS_AS(parse_field_expr("pow:1", 0.0, 1.0), Error);
  CHECK_THROWS_AS(parse_field_expr("min(const:1", 0.0, 1.0), Error);
  CHECK_THROWS_AS(parse_field_expr("nope:3", 0.0, 1.0), Error);
  CHECK_THROWS_AS(parse_field_expr("const:1 junk", 0.0, 1.0), Error);
}

TEST_CASE("field expressions evaluate as documented") {
  auto zero = parse_field_expr("const:0", 0.0, 1.0);
  CHECK(zero.field.eval(0.5) == 0.0);
  auto sharp = parse_field_expr("pow:0.25,-2", 0.1, 10.0);
  CHECK(sharp.field.eval(2.0) == doctest::Approx(0.25 / 4.0));
  auto clipped = parse_field_expr("min(const:0.03,pow:0.25,-2)", 0.1, 10.0);
  CHECK(clipped.field.eval(0.5) == doctest::Approx(0.03));
  CHECK(clipped.field.eval(4.0) == doctest::Approx(0.25 / 16.0));
}

TEST_CASE("spaces and measures build from config sections") {
  auto cfg = Config::parse_text(
      "[space]\n"
      "kind = model\n"
      "a = 0.1\n"
      "b = 3.0415926535897931\n"
      "N = 3\n"
      "kappa = const:1\n"
      "u0 = 0.09983341664682815\n"
      "v0 = 0.9950041652780258\n"
      "grid = 512\n");
  auto space = space_from_config(cfg);
  CHECK(space->weight(1.0) ==
        doctest::Approx(std::sin(1.0) * std::sin(1.0)).epsilon(1e-8));
  REQUIRE(space->certified());
  CHECK(space->certified()->field.eval(1.0) == doctest::Approx(2.0));

  auto uniform = measure_from_spec(space, "uniform:0.3,0.5");
  CHECK(uniform.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
  auto smooth = measure_from_spec(space, "smooth:2.0,0.3");
  CHECK(smooth.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(measure_from_spec(space, "nonsense:1"), Error);
}

TEST_CASE("oscillator coefficients load from t,kappa tables") {
  const std::string path = "/tmp/cdv_test_coeff.csv";
  {
    std::ofstream out(path);
    out << "t,kappa\n0,1.5\n0.5,-2\n1.25,0.75\n";
  }
  auto kappa = coefficient_from_csv(path);
  CHECK(kappa.length() == doctest::Approx(1.25));
  CHECK(kappa.eval(0.25) == doctest::Approx(-0.25));  // linear between knots
  CHECK(kappa.eval(1.25) == doctest::Approx(0.75));
  std::remove(path.c_str());
}

TEST_CASE("csv round trip") {
  CsvTable table;
  table.header = {"t", "kappa"};
  table.rows = {{0.0, 1.0}, {0.5, -2.25}, {1.0, 0.125}};
  const std::string path = "/tmp/cdv_test_table.csv";
  write_csv(path, table);
  auto back = read_csv(path, {"t", "kappa"});
  REQUIRE(back.rows.size() == 3);
  CHECK(back.rows[1][1] == -2.25);
  CHECK_THROWS_AS(read_csv(path, {"x", "y"}), Error);
  std::remove(path.c_str());
}
