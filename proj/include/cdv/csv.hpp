#ifndef CDV_CSV_HPP
#define CDV_CSV_HPP

#include <string>
#include <vector>

namespace cdv {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
  std::vector<double> column_values(const std::string& name) const;
};

// Reads a numeric CSV with a header line. Raises ParseError on malformed
// input or if `expect_header` (when non-empty) does not match.
CsvTable read_csv(const std::string& path,
                  const std::vector<std::string>& expect_header = {});

CsvTable parse_csv_text(const std::string& text,
                        const std::vector<std::string>& expect_header = {});

void write_csv(const std::string& path, const CsvTable& table);

std::string format_csv(const CsvTable& table);

}  // namespace cdv

#endif
