#ifndef CDV_CONFIG_HPP
#define CDV_CONFIG_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cdv/curvature_field.hpp"
#include "cdv/spaces.hpp"
#include "cdv/transport.hpp"

namespace cdv {

// Flat key = value configuration with [section] headers. Unknown keys are
// rejected against the per-command schema at load time.
class Config {
 public:
  static Config parse_text(const std::string& text);
  static Config load(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  int get_int_or(const std::string& section, const std::string& key,
                 int fallback) const;
  std::vector<double> get_list(const std::string& section,
                               const std::string& key) const;

  // rejects keys outside the allowlist; missing sections are fine
  void validate_keys(
      const std::map<std::string, std::vector<std::string>>& schema) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections()
      const {
    return sections_;
  }

  // full resolved configuration, canonical text form (audit trail)
  std::string canonical() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

struct ParsedField {
  CurvatureField field;
  std::string canonical;
};

// Grammar: const:<K> | pow:<a>,<q>[,<p>] | table:<path> | min(<e1>,<e2>)
ParsedField parse_field_expr(const std::string& text, double lo, double hi);

// Space construction from the [space] section (kind = lebesgue | model |
// weight_csv).
std::shared_ptr<const WeightedInterval> space_from_config(const Config& cfg,
                                                          const std::string&
                                                              section = "space");

// Measure construction from a spec string: uniform:<lo>,<hi> |
// smooth:<freq>,<phase>[,<amp>] | csv:<path>
Measure1D measure_from_spec(std::shared_ptr<const WeightedInterval> space,
                            const std::string& spec);

// Piecewise-linear oscillator coefficient from a CSV with header t,kappa.
CoefficientFn coefficient_from_csv(const std::string& path);

}  // namespace cdv

#endif
