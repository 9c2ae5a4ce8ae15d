#include "qhe/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "qhe/errors.hpp"

namespace qhe {

namespace {

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string format_cell(const CsvCell& cell, int precision) {
  if (std::holds_alternative<std::monostate>(cell)) return "";
  if (std::holds_alternative<std::string>(cell)) {
    return quote_if_needed(std::get<std::string>(cell));
  }
  const double v = std::get<double>(cell);
  if (!std::isfinite(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

std::string render_csv(const CsvTable& table, int precision) {
  if (precision < 6) precision = 6;
  if (precision > 17) precision = 17;
  std::string out;
  for (const auto& line : table.metadata) {
    out += "# ";
    out += line;
    out += "\n";
  }
  if (table.header.empty()) {
    throw InvalidParams("render_csv: header row is mandatory");
  }
  for (size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ",";
    out += quote_if_needed(table.header[i]);
  }
  out += "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) {
      throw InvalidParams("render_csv: row width does not match header");
    }
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += format_cell(row[i], precision);
    }
    out += "\n";
  }
  return out;
}

void write_csv(const CsvTable& table, const std::string& path, int precision) {
  const std::string text = render_csv(table, precision);
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw ConfigError("write_csv: cannot open output path '" + path + "'");
  }
  f << text;
  if (!f) {
    throw ConfigError("write_csv: write failed for '" + path + "'");
  }
}

}  // namespace qhe
