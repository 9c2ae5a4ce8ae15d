#pragma once

#include <string>
#include <vector>

namespace qhe {

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Minimal self-contained line plot: axes with end labels, one polyline per
// series, a legend. Non-finite points break the polyline. Intended as a quick
// visual check, not publication graphics.
std::string render_svg_lines(const std::vector<SvgSeries>& series,
                             const std::string& title, const std::string& x_label,
                             const std::string& y_label, int width = 900,
                             int height = 560);

void write_svg(const std::vector<SvgSeries>& series, const std::string& path,
               const std::string& title, const std::string& x_label,
               const std::string& y_label);

}  // namespace qhe
