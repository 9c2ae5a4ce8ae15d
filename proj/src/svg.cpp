#include "qhe/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "qhe/errors.hpp"

namespace qhe {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg_lines(const std::vector<SvgSeries>& series,
                             const std::string& title, const std::string& x_label,
                             const std::string& y_label, int width, int height) {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) {
      throw InvalidParams("render_svg_lines: series '" + s.label +
                          "' has mismatched x/y lengths");
    }
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!(xmin <= xmax)) {  // no finite data at all
    xmin = 0.0; xmax = 1.0; ymin = 0.0; ymax = 1.0;
  }
  if (xmax == xmin) { xmax = xmin + 1.0; }
  if (ymax == ymin) { ymax = ymin + 1.0; }
  const double pad_y = 0.05 * (ymax - ymin);
  ymin -= pad_y;
  ymax += pad_y;

  const double ml = 70, mr = 20, mt = 40, mb = 50;
  const double pw = width - ml - mr;
  const double ph = height - mt - mb;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
         std::to_string(width) + " " + std::to_string(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(width / 2.0) + "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" + escape_xml(title) + "</text>\n";
  // axes
  svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt + ph) + "\" x2=\"" + num(ml + pw) +
         "\" y2=\"" + num(mt + ph) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(ml) +
         "\" y2=\"" + num(mt + ph) + "\" stroke=\"black\"/>\n";
  // axis end labels
  svg += "<text x=\"" + num(ml) + "\" y=\"" + num(mt + ph + 18) +
         "\" font-family=\"sans-serif\" font-size=\"11\">" + num(xmin) + "</text>\n";
  svg += "<text x=\"" + num(ml + pw) + "\" y=\"" + num(mt + ph + 18) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
         num(xmax) + "</text>\n";
  svg += "<text x=\"" + num(ml - 6) + "\" y=\"" + num(mt + ph) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
         num(ymin + pad_y) + "</text>\n";
  svg += "<text x=\"" + num(ml - 6) + "\" y=\"" + num(mt + 10) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
         num(ymax - pad_y) + "</text>\n";
  svg += "<text x=\"" + num(ml + pw / 2.0) + "\" y=\"" + num(height - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         escape_xml(x_label) + "</text>\n";
  svg += "<text x=\"16\" y=\"" + num(mt + ph / 2.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 16 " + num(mt + ph / 2.0) + ")\">" +
         escape_xml(y_label) + "</text>\n";

  for (size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string points;
    bool open = false;
    auto flush = [&]() {
      if (open && !points.empty()) {
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
      }
      points.clear();
      open = false;
    };
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        flush();
        continue;
      }
      points += num(px(s.x[i])) + "," + num(py(s.y[i])) + " ";
      open = true;
    }
    flush();
    const double ly = mt + 16.0 * (si + 1);
    svg += "<line x1=\"" + num(ml + pw - 150) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" +
           num(ml + pw - 120) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(ml + pw - 114) + "\" y=\"" + num(ly) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + escape_xml(s.label) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_svg(const std::vector<SvgSeries>& series, const std::string& path,
               const std::string& title, const std::string& x_label,
               const std::string& y_label) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw ConfigError("write_svg: cannot open output path '" + path + "'");
  }
  f << render_svg_lines(series, title, x_label, y_label);
  if (!f) {
    throw ConfigError("write_svg: write failed for '" + path + "'");
  }
}

}  // namespace qhe
