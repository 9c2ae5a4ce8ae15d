#pragma once

#include <string>
#include <variant>
#include <vector>

namespace qhe {

// A cell is empty (monostate), numeric, or text. Non-finite numerics render as
// empty cells; callers flag such rows explicitly.
using CsvCell = std::variant<std::monostate, double, std::string>;

struct CsvTable {
  std::vector<std::string> metadata;  // emitted as '# ...' lines before the header
  std::vector<std::string> header;
  std::vector<std::vector<CsvCell>> rows;
};

// Formats one cell: doubles with the given significant digits (C locale,
// '.' decimal point), strings quoted per RFC 4180 when needed.
std::string format_cell(const CsvCell& cell, int precision);

// Renders the whole table deterministically. precision is clamped to [6, 17].
std::string render_csv(const CsvTable& table, int precision = 12);

// Writes to path, or to stdout when path is empty.
void write_csv(const CsvTable& table, const std::string& path, int precision = 12);

}  // namespace qhe
