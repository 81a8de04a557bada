// Command-line front end: parses experiment configs, runs the verifiers and
// emits JSON reports plus optional CSV artifacts.
//
// Exit codes: 0 all verdicts pass, 1 violation, 2 usage or config error,
// 3 borderline / not-converged.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "cdv/cd_check.hpp"
#include "cdv/config.hpp"
#include "cdv/csv.hpp"
#include "cdv/geometry.hpp"
#include "cdv/suite.hpp"

using nlohmann::json;
using namespace cdv;

namespace {

const std::map<std::string, std::vector<std::string>> kSchema{
    {"run", {"command", "seed", "jobs", "output", "csv_out"}},
    {"space",
     {"kind", "a", "b", "grid", "kappa", "N", "u0", "v0", "scale_by_dim",
      "path"}},
    {"space2",
     {"kind", "a", "b", "grid", "kappa", "N", "u0", "v0", "scale_by_dim",
      "path"}},
    {"field", {"expr"}},
    {"measures", {"mu0", "mu1", "mu0_2", "mu1_2"}},
    {"params",
     {"N", "Nprime", "t_grid", "Q", "tolerance", "form", "r", "R", "x0",
      "mode", "kbar", "L", "c", "d", "eps", "delta", "coefficient", "table",
      "u", "A0", "A1", "pair_grid", "probe_max", "restrict_samples", "only",
      "kappa_csv", "slice_t", "slice_out"}},
};

struct RunContext {
  Config cfg;
  std::string output;
  std::string csv_out;
  int jobs = 1;
  std::uint64_t seed = 20240808;
};

void emit(const RunContext& ctx, json report) {
  report["config"] = ctx.cfg.canonical();  // audit trail
  const std::string text = report.dump(2) + "\n";
  if (ctx.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(ctx.output);
    if (!out) raise(ErrorKind::ConfigError, "cannot write '" + ctx.output + "'");
    out << text;
  }
}

CdOptions cd_options(const RunContext& ctx) {
  CdOptions opts;
  opts.Q = ctx.cfg.get_int_or("params", "Q", 512);
  opts.tolerance = ctx.cfg.get_double_or("params", "tolerance", 1e-3);
  if (ctx.cfg.has("params", "t_grid"))
    opts.t_grid = ctx.cfg.get_list("params", "t_grid");
  opts.restrict_samples = ctx.cfg.get_int_or("params", "restrict_samples", 257);
  opts.collect_slacks = !ctx.csv_out.empty();
  opts.jobs = ctx.jobs;
  return opts;
}

ParsedField required_field(const RunContext& ctx, const WeightedInterval& space) {
  if (ctx.cfg.has("field", "expr"))
    return parse_field_expr(ctx.cfg.get("field", "expr"), space.a(), space.b());
  if (space.certified())
    return ParsedField{space.certified()->field,
                       space.certified()->field.describe()};
  raise(ErrorKind::ConfigError,
        "no [field] expr and the space carries no certificate");
}

json report_json(const CdReport& r) {
  json j;
  j["condition"] = r.condition;
  j["field"] = r.field_desc;
  j["N"] = r.N;
  if (!r.Nprime.empty()) j["Nprime"] = r.Nprime;
  j["t_grid"] = r.t_grid;
  j["Q"] = r.Q;
  j["tolerance"] = r.tolerance;
  j["worst_slack"] = r.worst_slack;
  j["worst_t"] = r.worst_t;
  j["worst_j"] = r.worst_j;
  j["infinite_rhs"] = r.infinite_rhs;
  j["verdict"] = r.pass ? "pass" : "violated";
  return j;
}

void write_slack_csv(const std::string& path, const CdReport& r) {
  CsvTable table;
  table.header = {"t", "j", "slack"};
  for (const auto& s : r.slacks)
    table.rows.push_back({s.t, static_cast<double>(s.j), s.slack});
  write_csv(path, table);
}

// --------------------------------------------------------------------------
// commands
// --------------------------------------------------------------------------

int run_sin(const RunContext& ctx) {
  auto space = space_from_config(ctx.cfg);
  std::string field_desc;
  const CoefficientFn kappa = [&] {
    if (ctx.cfg.has("params", "kappa_csv")) {
      field_desc = "csv:" + ctx.cfg.get("params", "kappa_csv");
      return coefficient_from_csv(ctx.cfg.get("params", "kappa_csv"));
    }
    auto field = required_field(ctx, *space);
    field_desc = field.canonical;
    return restrict_along(field.field, GeodesicSegment{space->a(), space->b()});
  }();
  const double length = kappa.length();
  const SinSolution sn = generalized_sin(kappa, length);
  const SinSolution cs = generalized_cos(kappa, length);

  CsvTable table;
  table.header = {"t", "s", "c"};
  for (int i = 0; i <= 512; ++i) {
    const double t = length * i / 512;
    table.rows.push_back({t, sn.eval(t), cs.eval(t)});
  }
  if (!ctx.csv_out.empty()) write_csv(ctx.csv_out, table);

  json report;
  report["command"] = "sin";
  report["field"] = field_desc;
  report["length"] = length;
  if (sn.first_zero)
    report["first_zero"] = *sn.first_zero;
  else
    report["first_zero"] = nullptr;
  emit(ctx, report);
  return 0;
}

int run_distortion(const RunContext& ctx) {
  auto space = space_from_config(ctx.cfg);
  auto field = required_field(ctx, *space);
  const std::string kind = ctx.cfg.get_or("params", "coefficient", "sigma");
  const double N = ctx.cfg.get_double_or("params", "N", 1.0);
  const CsvTable queries =
      read_csv(ctx.cfg.get("params", "table"), {"t", "theta"});

  CsvTable out;
  out.header = {"t", "theta", "value", "is_inf"};
  for (const auto& row : queries.rows) {
    const double t = row[0], theta = row[1];
    const GeodesicSegment seg{space->a(), std::min(space->a() + theta, space->b())};
    const CoefficientFn kappa = restrict_along(field.field, seg);
    ExtendedNonNeg value = ExtendedNonNeg::finite(0.0);
    if (kind == "sigma")
      value = sigma(kappa, t, theta);
    else if (kind == "sigma_kN")
      value = sigma_kN(kappa, N, t, theta);
    else if (kind == "tau")
      value = tau(kappa, N, t, theta);
    else
      raise(ErrorKind::ConfigError, "coefficient must be sigma|sigma_kN|tau");
    out.rows.push_back({t, theta, value.is_inf() ? 0.0 : value.finite_value(),
                        value.is_inf() ? 1.0 : 0.0});
  }
  if (!ctx.csv_out.empty())
    write_csv(ctx.csv_out, out);
  else
    std::cout << format_csv(out);

  json report;
  report["command"] = "distortion";
  report["coefficient"] = kind;
  report["rows"] = out.rows.size();
  emit(ctx, report);
  return 0;
}

int run_convexity(const RunContext& ctx) {
  auto space = space_from_config(ctx.cfg);
  auto field = required_field(ctx, *space);
  const CsvTable table = read_csv(ctx.cfg.get("params", "u"), {"s", "value"});
  const auto ss = table.column_values("s");
  const auto vs = table.column_values("value");
  SampledFunction u;
  u.a = ss.front();
  u.b = ss.back();
  u.values = vs;
  u.validate();
  const CoefficientFn kappa =
      restrict_along(field.field, GeodesicSegment{u.a, u.b});
  const double tol = ctx.cfg.get_double_or("params", "tolerance", 1e-4);

  const ConvexityVerdict d = check_distributional(u, kappa, tol);
  const ConvexityVerdict g = check_green(u, kappa, std::max(tol, 1e-3));
  const ConvexityVerdict f = check_distortion_form(
      u, kappa, GeodesicScope::AllGeodesics, 0.0, std::max(tol, 1e-3));

  json report;
  report["command"] = "convexity";
  for (auto [name, v] :
       {std::pair<const char*, const ConvexityVerdict*>{"distributional", &d},
        {"green", &g},
        {"distortion", &f}}) {
    report[name]["holds"] = v->holds;
    report[name]["worst_residual"] = v->worst_residual;
    report[name]["tolerance"] = v->tolerance;
  }
  emit(ctx, report);
  return (d.holds && g.holds && f.holds) ? 0 : 1;
}

int run_cd(const RunContext& ctx) {
  auto space = space_from_config(ctx.cfg);
  auto field = required_field(ctx, *space);
  const double N = ctx.cfg.has("params", "N")
                       ? ctx.cfg.get_double("params", "N")
                       : (space->certified() ? space->certified()->N : 1.0);
  auto mu0 = measure_from_spec(space, ctx.cfg.get("measures", "mu0"));
  auto mu1 = measure_from_spec(space, ctx.cfg.get("measures", "mu1"));
  const CdOptions opts = cd_options(ctx);
  const std::string form = ctx.cfg.get_or("params", "form", "pointwise");

  json report;
  report["command"] = "cd";
  bool all_pass = true;
  CdReport pointwise;
  if (form == "pointwise" || form == "all") {
    pointwise = check_pointwise_cd(*space, field.field, N, mu0, mu1, opts);
    report["pointwise"] = report_json(pointwise);
    all_pass = all_pass && pointwise.pass;
    if (!ctx.csv_out.empty()) write_slack_csv(ctx.csv_out, pointwise);
  }
  if (form == "entropy" || form == "all") {
    const std::vector<double> nprime =
        ctx.cfg.has("params", "Nprime") ? ctx.cfg.get_list("params", "Nprime")
                                        : std::vector<double>{N};
    const CdReport r =
        check_entropy_cd(*space, field.field, N, mu0, mu1, nprime, opts);
    report["entropy"] = report_json(r);
    all_pass = all_pass && r.pass;
  }
  if (form == "reduced" || form == "all") {
    const CdReport r = check_reduced_cd(*space, field.field, N, mu0, mu1, opts);
    report["reduced"] = report_json(r);
    all_pass = all_pass && r.pass;
  }
  if (form == "infinity" || form == "all") {
    const CdReport r = check_cd_infinity(*space, field.field, mu0, mu1, opts);
    report["infinity"] = report_json(r);
    all_pass = all_pass && r.pass;
  }
  if (report.size() <= 1)
    raise(ErrorKind::ConfigError,
          "form must be pointwise|entropy|reduced|infinity|all");
  if (ctx.cfg.has("params", "slice_out")) {
    const double t = ctx.cfg.get_double_or("params", "slice_t", 0.5);
    CsvTable table;
    table.header = {"j", "q", "x_t", "rho_t"};
    append_slice_rows(interpolate(mu0, mu1, t, opts.Q), table.rows);
    write_csv(ctx.cfg.get("params", "slice_out"), table);
  }
  report["verdict"] = all_pass ? "pass" : "violated";
  emit(ctx, report);
  return all_pass ? 0 : 1;
}

int run_bm(const RunContext& ctx) {
  auto space = space_from_config(ctx.cfg);
  auto field = required_field(ctx, *space);
  const double N = ctx.cfg.get_double("params", "N");
  const auto a0 = ctx.cfg.get_list("params", "A0");
  const auto a1 = ctx.cfg.get_list("params", "A1");
  if (a0.size() != 2 || a1.size() != 2)
    raise(ErrorKind::ConfigError, "A0 and A1 need <lo>,<hi>");
  const std::vector<double> t_grid = ctx.cfg.has("params", "t_grid")
                                         ? ctx.cfg.get_list("params", "t_grid")
                                         : std::vector<double>{0.25, 0.5, 0.75};
  const BmReport report = brunn_minkowski_check(
      *space, field.field, N, Interval{a0[0], a0[1]}, Interval{a1[0], a1[1]},
      t_grid, ctx.cfg.get_int_or("params", "pair_grid", 12),
      ctx.cfg.get_double_or("params", "tolerance", 1e-6));

  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"t", row.t},
                    {"lhs", row.lhs},
                    {"rhs", row.rhs},
                    {"slack", row.slack},
                    {"rhs_infinite", row.rhs_infinite}});
  }
  json j;
  j["command"] = "bm";
  j["rows"] = rows;
  j["verdict"] = report.holds ? "pass" : "violated";
  emit(ctx, j);
  return report.holds ? 0 : 1;
}

int run_bg(const RunContext& ctx) {
  auto space = space_from_config(ctx.cfg);
  const double N = ctx.cfg.get_double("params", "N");
  const double x0 = ctx.cfg.get_double("params", "x0");
  const double r = ctx.cfg.get_double("params", "r");
  const double R = ctx.cfg.get_double("params", "R");
  const std::string mode_name = ctx.cfg.get_or("params", "mode", "constant");
  BgMode mode = mode_name == "envelope"
                    ? BgMode::envelope()
                    : BgMode::constant(ctx.cfg.get_double("params", "kbar"));
  if (mode_name != "envelope" && mode_name != "constant")
    raise(ErrorKind::ConfigError, "mode must be constant|envelope");
  const BgReport report = bishop_gromov_check(
      *space, x0, N, mode, r, R,
      ctx.cfg.get_double_or("params", "tolerance", 1e-6));

  json j;
  j["command"] = "bg";
  j["sphere"] = {{"lhs", report.sphere_lhs},
                 {"rhs", report.sphere_rhs},
                 {"slack", report.sphere_slack}};
  j["ball"] = {{"lhs", report.ball_lhs},
               {"rhs", report.ball_rhs},
               {"slack", report.ball_slack}};
  j["verdict"] = report.holds ? "pass" : "violated";

  if (!ctx.csv_out.empty()) {
    // ball-ratio profile over radii up to R
    CsvTable profile;
    profile.header = {"r", "lhs", "rhs", "slack"};
    for (int i = 1; i <= 32; ++i) {
      const double rr = R * i / 33.0;
      const BgReport row = bishop_gromov_check(
          *space, x0, N, mode, rr, R,
          ctx.cfg.get_double_or("params", "tolerance", 1e-6));
      profile.rows.push_back(
          {rr, row.ball_lhs, row.ball_rhs, row.ball_slack});
    }
    write_csv(ctx.csv_out, profile);
  }
  emit(ctx, j);
  return report.holds ? 0 : 1;
}

int run_doubling(const RunContext& ctx) {
  const double N = ctx.cfg.get_double("params", "N");
  const double kbar = ctx.cfg.get_double("params", "kbar");
  const double L = ctx.cfg.get_double("params", "L");
  const double bound = doubling_bound(kbar, N, L);

  json j;
  j["command"] = "doubling";
  j["bound"] = bound;
  bool ok = true;
  if (ctx.cfg.has("space", "kind") || ctx.cfg.has("space", "a")) {
    auto space = space_from_config(ctx.cfg);
    const double x0 = ctx.cfg.get_double_or(
        "params", "x0", 0.5 * (space->a() + space->b()));
    json rows = json::array();
    for (int i = 1; i <= 8; ++i) {
      const double r = L / 16.0 * i / 2.0;
      const double v2 = volume(*space, x0, 2.0 * r);
      const double v1 = volume(*space, x0, r);
      if (v1 <= 0.0) continue;
      const double ratio = v2 / v1;
      ok = ok && ratio <= bound + 1e-9;
      rows.push_back({{"r", r}, {"ratio", ratio}});
    }
    j["measured"] = rows;
  }
  j["verdict"] = ok ? "pass" : "violated";
  emit(ctx, j);
  return ok ? 0 : 1;
}

int run_schneider(const RunContext& ctx) {
  const double N = ctx.cfg.get_double("params", "N");
  const double c = ctx.cfg.get_double("params", "c");
  json j;
  j["command"] = "schneider";
  if (ctx.cfg.has("params", "R")) {
    const double bound = schneider_bound(
        c, N, ctx.cfg.get_double("params", "R"),
        ctx.cfg.get_double("params", "delta"));
    j["bound"] = bound;
  }
  bool ok = true;
  if (ctx.cfg.has("params", "d")) {
    const SchneiderWitness witness = schneider_oscillation_witness(
        c, N, ctx.cfg.get_double("params", "d"),
        ctx.cfg.get_double_or("params", "eps", 0.1));
    j["supercritical"] = witness.supercritical;
    if (witness.supercritical) {
      j["alpha"] = witness.alpha;
      j["closed_form_dev"] = witness.max_closed_form_dev;
      j["zero_predicted"] = *witness.zero_predicted;
      if (witness.zero) j["zero"] = *witness.zero;
      ok = witness.zero.has_value() && witness.max_closed_form_dev <= 1e-6 &&
           std::abs(*witness.zero - *witness.zero_predicted) <= 1e-6;
    } else {
      j["zero"] = witness.zero ? json(*witness.zero) : json(nullptr);
      ok = !witness.zero.has_value();
    }
  }
  j["verdict"] = ok ? "pass" : "violated";
  emit(ctx, j);
  return ok ? 0 : 1;
}

int run_tensor(const RunContext& ctx) {
  auto s1 = space_from_config(ctx.cfg, "space");
  auto s2 = space_from_config(ctx.cfg, "space2");
  ProductSpace prod(*s1, *s2);
  auto mu0_1 = measure_from_spec(s1, ctx.cfg.get("measures", "mu0"));
  auto mu0_2 = measure_from_spec(s2, ctx.cfg.get("measures", "mu0_2"));
  auto mu1_1 = measure_from_spec(s1, ctx.cfg.get("measures", "mu1"));
  auto mu1_2 = measure_from_spec(s2, ctx.cfg.get("measures", "mu1_2"));
  CdOptions opts = cd_options(ctx);
  if (!ctx.cfg.has("params", "t_grid")) opts.t_grid = {0.25, 0.5, 0.75};
  const TensorReport report =
      check_tensorization(prod, mu0_1, mu0_2, mu1_1, mu1_2, opts);

  json j;
  j["command"] = "tensor";
  j["pointwise"] = report_json(report.pointwise);
  j["coefficient_slack"] = report.worst_coefficient_slack;
  j["coefficient_claim"] = report.coefficient_claim_holds ? "pass" : "violated";
  const bool ok = report.pointwise.pass && report.coefficient_claim_holds;
  j["verdict"] = ok ? "pass" : "violated";
  emit(ctx, j);
  return ok ? 0 : 1;
}

int run_suite_cmd(const RunContext& ctx) {
  SuiteOptions opts;
  opts.seed = ctx.seed;
  opts.jobs = ctx.jobs;
  if (ctx.cfg.has("params", "only"))
    for (double id : ctx.cfg.get_list("params", "only"))
      opts.only.push_back(static_cast<int>(id));
  const auto results = run_suite(opts);
  json rows = json::array();
  bool all_ok = true;
  for (const auto& r : results) {
    std::printf("[%s] %2d %-55s %6.2f s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds);
    rows.push_back({{"id", r.id},
                    {"name", r.name},
                    {"pass", r.pass},
                    {"detail", r.detail},
                    {"seconds", r.seconds}});
    all_ok = all_ok && r.pass;
  }
  std::printf("%s\n", all_ok ? "all checks passed" : "FAILURES present");
  if (!ctx.output.empty()) {
    json j;
    j["command"] = "suite";
    j["criteria"] = rows;
    j["verdict"] = all_ok ? "pass" : "violated";
    emit(ctx, j);
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "curvature-dimension verifiers on weighted intervals\n"
      "commands: sin distortion convexity cd bm bg doubling schneider tensor "
      "suite\n"
      "field grammar: const:<K> | pow:<a>,<q>[,<p>] | table:<path> | "
      "min(<e1>,<e2>)\n"
      "measure specs: uniform:<lo>,<hi> | smooth:<freq>,<phase>[,<amp>] | "
      "csv:<path>"};
  std::string command, config_path;
  app.add_option("command", command, "command to run")->required();
  app.add_option("-c,--config", config_path, "config file (key = value lines)");
  std::uint64_t seed_flag = 0;
  int jobs_flag = 0;
  app.add_option("--seed", seed_flag, "override the config seed");
  app.add_option("--jobs", jobs_flag, "override the config worker count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    RunContext ctx;
    if (!config_path.empty()) ctx.cfg = Config::load(config_path);
    ctx.cfg.validate_keys(kSchema);
    if (ctx.cfg.has("run", "command") &&
        ctx.cfg.get("run", "command") != command)
      raise(ErrorKind::ConfigError, "config command does not match '" + command + "'");
    ctx.seed = static_cast<std::uint64_t>(
        ctx.cfg.get_double_or("run", "seed", 20240808));
    ctx.jobs = ctx.cfg.get_int_or("run", "jobs", 1);
    if (seed_flag != 0) ctx.seed = seed_flag;
    if (jobs_flag != 0) ctx.jobs = jobs_flag;
    ctx.output = ctx.cfg.get_or("run", "output", "");
    ctx.csv_out = ctx.cfg.get_or("run", "csv_out", "");

    if (command == "sin") return run_sin(ctx);
    if (command == "distortion") return run_distortion(ctx);
    if (command == "convexity") return run_convexity(ctx);
    if (command == "cd") return run_cd(ctx);
    if (command == "bm") return run_bm(ctx);
    if (command == "bg") return run_bg(ctx);
    if (command == "doubling") return run_doubling(ctx);
    if (command == "schneider") return run_schneider(ctx);
    if (command == "tensor") return run_tensor(ctx);
    if (command == "suite") return run_suite_cmd(ctx);
    std::cerr << "unknown command '" << command << "'\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    if (e.kind() == ErrorKind::Borderline || e.kind() == ErrorKind::NotConverged)
      return 3;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
