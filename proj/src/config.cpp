#include "cdv/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cdv/csv.hpp"

namespace cdv {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    raise(ErrorKind::ConfigError, "bad number '" + text + "' for " + what);
  }
}

}  // namespace

Config Config::parse_text(const std::string& text) {
  Config cfg;
  std::stringstream ss(text);
  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        raise(ErrorKind::ConfigError,
              "line " + std::to_string(line_no) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        raise(ErrorKind::ConfigError,
              "line " + std::to_string(line_no) + ": empty section name");
      cfg.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      raise(ErrorKind::ConfigError,
            "line " + std::to_string(line_no) + ": expected key = value");
    if (section.empty())
      raise(ErrorKind::ConfigError,
            "line " + std::to_string(line_no) + ": key outside any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      raise(ErrorKind::ConfigError, "line " + std::to_string(line_no) + ": empty key");
    if (cfg.sections_[section].count(key))
      raise(ErrorKind::ConfigError,
            "duplicate key '" + key + "' in [" + section + "]");
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::ConfigError, "cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str());
}

bool Config::has(const std::string& section, const std::string& key) const {
  auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string Config::get(const std::string& section, const std::string& key) const {
  if (!has(section, key))
    raise(ErrorKind::ConfigError, "missing key '" + key + "' in [" + section + "]");
  return sections_.at(section).at(key);
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
  return parse_number(get(section, key), "[" + section + "] " + key);
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

int Config::get_int_or(const std::string& section, const std::string& key,
                       int fallback) const {
  if (!has(section, key)) return fallback;
  const double v = get_double(section, key);
  if (v != std::floor(v))
    raise(ErrorKind::ConfigError, "[" + section + "] " + key + " must be integral");
  return static_cast<int>(v);
}

std::vector<double> Config::get_list(const std::string& section,
                                     const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(get(section, key));
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell = trim(cell);
    if (!cell.empty())
      out.push_back(parse_number(cell, "[" + section + "] " + key));
  }
  if (out.empty())
    raise(ErrorKind::ConfigError, "[" + section + "] " + key + " is an empty list");
  return out;
}

void Config::validate_keys(
    const std::map<std::string, std::vector<std::string>>& schema) const {
  for (const auto& [section, keys] : sections_) {
    auto it = schema.find(section);
    if (it == schema.end())
      raise(ErrorKind::ConfigError, "unknown section [" + section + "]");
    for (const auto& [key, value] : keys) {
      (void)value;
      if (std::find(it->second.begin(), it->second.end(), key) ==
          it->second.end())
        raise(ErrorKind::ConfigError,
              "unknown key '" + key + "' in [" + section + "]");
    }
  }
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [section, keys] : sections_) {
    out += "[" + section + "]\n";
    for (const auto& [key, value] : keys) out += key + " = " + value + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// field expression grammar
// ---------------------------------------------------------------------------

namespace {

struct FieldParser {
  const std::string& text;
  double lo, hi;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    raise(ErrorKind::ParseError,
          what + " at position " + std::to_string(pos) + " in '" + text + "'");
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string until_any(const std::string& stops) {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && stops.find(text[pos]) == std::string::npos) ++pos;
    return trim(text.substr(start, pos - start));
  }

  double number(const std::string& what) {
    const std::string tok = until_any(",()");
    if (tok.empty()) fail("expected a number for " + what);
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      fail("bad number '" + tok + "' for " + what);
    }
  }

  ParsedField parse() {
    ParsedField out = expr();
    skip_ws();
    if (pos != text.size()) fail("trailing input");
    return out;
  }

  ParsedField expr() {
    skip_ws();
    if (text.compare(pos, 4, "min(") == 0) {
      pos += 4;
      ParsedField a = expr();
      if (!eat(',')) fail("expected ',' in min(...)");
      ParsedField b = expr();
      if (!eat(')')) fail("expected ')' closing min(...)");
      return ParsedField{CurvatureField::min_of(a.field, b.field),
                         "min(" + a.canonical + "," + b.canonical + ")"};
    }
    if (text.compare(pos, 6, "const:") == 0) {
      pos += 6;
      const double k = number("const");
      return ParsedField{CurvatureField::constant(k, lo, hi), "const:" + fmt(k)};
    }
    if (text.compare(pos, 4, "pow:") == 0) {
      pos += 4;
      const double a = number("pow coefficient");
      if (!eat(',')) fail("expected ',' after the pow coefficient");
      const double q = number("pow exponent");
      double pole = 0.0;
      if (eat(',')) pole = number("pow pole");
      std::string canon = "pow:" + fmt(a) + "," + fmt(q);
      if (pole != 0.0) canon += "," + fmt(pole);
      return ParsedField{CurvatureField::radial_power(a, q, pole, lo, hi), canon};
    }
    if (text.compare(pos, 6, "table:") == 0) {
      pos += 6;
      const std::string path = until_any(",)");
      if (path.empty()) fail("expected a path after table:");
      CsvTable table = read_csv(path, {"r", "k"});
      auto field = CurvatureField::radial_table(0.0, table.column_values("r"),
                                                table.column_values("k"), lo, hi,
                                                /*lsc=*/true);
      return ParsedField{std::move(field), "table:" + path};
    }
    fail("expected const:, pow:, table: or min(");
  }
};

}  // namespace

ParsedField parse_field_expr(const std::string& text, double lo, double hi) {
  FieldParser parser{text, lo, hi};
  return parser.parse();
}

std::shared_ptr<const WeightedInterval> space_from_config(
    const Config& cfg, const std::string& section) {
  const std::string kind = cfg.get_or(section, "kind", "lebesgue");
  const int grid = cfg.get_int_or(section, "grid", 4096);
  if (kind == "lebesgue") {
    const double a = cfg.get_double(section, "a");
    const double b = cfg.get_double(section, "b");
    auto space = WeightedInterval::lebesgue(a, b, grid);
    space.certify(CurvatureField::constant(0.0, a, b), 1.0);
    return std::make_shared<const WeightedInterval>(std::move(space));
  }
  if (kind == "model") {
    const double a = cfg.get_double(section, "a");
    const double b = cfg.get_double(section, "b");
    const double N = cfg.get_double(section, "N");
    auto parsed = parse_field_expr(cfg.get(section, "kappa"), a, b);
    const CoefficientFn kappa_ode =
        restrict_along(parsed.field, GeodesicSegment{a, b});
    const double u0 = cfg.get_double_or(section, "u0", 0.0);
    const double v0 = cfg.get_double_or(section, "v0", 1.0);
    const bool scale = cfg.get_or(section, "scale_by_dim", "true") == "true";
    return std::make_shared<const WeightedInterval>(
        model_space(kappa_ode, N, a, b, u0, v0, grid, scale));
  }
  if (kind == "weight_csv") {
    CsvTable table = read_csv(cfg.get(section, "path"), {"x", "w"});
    return std::make_shared<const WeightedInterval>(WeightedInterval::from_samples(
        table.column_values("x"), table.column_values("w"), grid));
  }
  raise(ErrorKind::ConfigError, "unknown space kind '" + kind + "'");
}

Measure1D measure_from_spec(std::shared_ptr<const WeightedInterval> space,
                            const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  std::vector<double> nums;
  if (kind != "csv") {
    std::stringstream ss(args);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cell = trim(cell);
      if (!cell.empty()) nums.push_back(parse_number(cell, "measure spec"));
    }
  }
  if (kind == "uniform") {
    if (nums.size() != 2)
      raise(ErrorKind::ConfigError, "uniform measure needs uniform:<lo>,<hi>");
    return Measure1D::uniform_on(std::move(space), nums[0], nums[1]);
  }
  if (kind == "smooth") {
    if (nums.size() < 2 || nums.size() > 3)
      raise(ErrorKind::ConfigError,
            "smooth measure needs smooth:<freq>,<phase>[,<amp>]");
    const double freq = nums[0], phase = nums[1];
    const double amp = nums.size() == 3 ? nums[2] : 0.6;
    if (!(amp > -1.0 && amp < 1.0))
      raise(ErrorKind::ConfigError, "smooth amplitude must stay in (-1,1)");
    return Measure1D::normalized(std::move(space), [freq, phase, amp](double x) {
      return 1.0 + amp * std::sin(freq * x + phase);
    });
  }
  if (kind == "csv") {
    CsvTable table = read_csv(args, {"x", "rho"});
    auto xs = std::make_shared<std::vector<double>>(table.column_values("x"));
    auto rs = std::make_shared<std::vector<double>>(table.column_values("rho"));
    auto rho = [xs, rs](double x) {
      const auto& t = *xs;
      if (x <= t.front()) return rs->front();
      if (x >= t.back()) return rs->back();
      auto it = std::upper_bound(t.begin(), t.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - t.begin());
      const double u = (x - t[i - 1]) / (t[i] - t[i - 1]);
      return (1.0 - u) * (*rs)[i - 1] + u * (*rs)[i];
    };
    return Measure1D::normalized(std::move(space), rho, *xs);
  }
  raise(ErrorKind::ConfigError, "unknown measure spec '" + spec + "'");
}

CoefficientFn coefficient_from_csv(const std::string& path) {
  CsvTable table = read_csv(path, {"t", "kappa"});
  return CoefficientFn::table(table.column_values("t"),
                              table.column_values("kappa"));
}

}  // namespace cdv
