#include "cdv/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cdv/errors.hpp"

namespace cdv {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  raise(ErrorKind::ParseError, "missing CSV column '" + name + "'");
}

std::vector<double> CsvTable::column_values(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

CsvTable parse_csv_text(const std::string& text,
                        const std::vector<std::string>& expect_header) {
  CsvTable table;
  std::stringstream ss(text);
  std::string line;
  bool saw_header = false;
  std::size_t line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto cells = split(line);
    if (!saw_header) {
      table.header = cells;
      saw_header = true;
      continue;
    }
    if (cells.size() != table.header.size())
      raise(ErrorKind::ParseError,
            "CSV row " + std::to_string(line_no) + " has " +
                std::to_string(cells.size()) + " cells, expected " +
                std::to_string(table.header.size()));
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) {
      try {
        std::size_t pos = 0;
        row.push_back(std::stod(cell, &pos));
        if (pos != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        raise(ErrorKind::ParseError,
              "CSV row " + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (!saw_header) raise(ErrorKind::ParseError, "CSV has no header line");
  if (!expect_header.empty() && table.header != expect_header) {
    std::string want;
    for (const auto& h : expect_header) want += h + ",";
    raise(ErrorKind::ParseError, "CSV header mismatch, expected '" + want + "'");
  }
  return table;
}

CsvTable read_csv(const std::string& path,
                  const std::vector<std::string>& expect_header) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_csv_text(buffer.str(), expect_header);
}

std::string format_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  char buf[64];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) raise(ErrorKind::ParseError, "cannot write '" + path + "'");
  out << format_csv(table);
}

}  // namespace cdv
