#pragma once

// Minimal standalone SVG line chart for sweep results.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <fmt/format.h>

namespace dce::plot {

struct Series {
  std::string name;
  std::string color;
  std::string dash;  // stroke-dasharray, empty for solid
  std::vector<double> y;
};

inline std::string escape_xml(const std::string& s) {
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

/// Renders y(x) curves; NaN samples break the polyline.
inline std::string render_svg(const std::string& title, const std::string& x_label,
                              const std::vector<double>& x, const std::vector<Series>& series) {
  constexpr double width = 640.0, height = 420.0;
  constexpr double left = 70.0, right = 20.0, top = 40.0, bottom = 55.0;
  const double pw = width - left - right;
  const double ph = height - top - bottom;

  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  for (double v : x) {
    x_min = std::min(x_min, v);
    x_max = std::max(x_max, v);
  }
  double y_min = 0.0, y_max = 0.0;
  for (const Series& s : series) {
    for (double v : s.y) {
      if (std::isfinite(v)) {
        y_min = std::min(y_min, v);
        y_max = std::max(y_max, v);
      }
    }
  }
  if (!(x_max > x_min)) x_max = x_min + 1.0;
  if (!(y_max > y_min)) y_max = y_min + 1.0;

  auto px = [&](double v) { return left + (v - x_min) / (x_max - x_min) * pw; };
  auto py = [&](double v) { return top + ph - (v - y_min) / (y_max - y_min) * ph; };

  std::string svg = fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\">\n"
      "<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n"
      "<text x=\"{2}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      "font-size=\"15\">{3}</text>\n",
      width, height, left + pw / 2, escape_xml(title));
  svg += fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", left,
      top, pw, ph);

  for (int i = 0; i <= 4; ++i) {
    const double xv = x_min + (x_max - x_min) * i / 4.0;
    const double yv = y_min + (y_max - y_min) * i / 4.0;
    svg += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"11\">{:.4g}</text>\n",
        px(xv), top + ph + 16, xv);
    svg += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\" font-family=\"sans-serif\" "
        "font-size=\"11\">{:.3g}</text>\n",
        left - 6, py(yv) + 4, yv);
  }
  svg += fmt::format(
      "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      "font-size=\"13\">{}</text>\n",
      left + pw / 2, height - 12, escape_xml(x_label));

  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    std::string points;
    auto flush = [&] {
      if (!points.empty()) {
        svg += fmt::format(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\"{} points=\"{}\"/>\n",
            s.color, s.dash.empty() ? "" : fmt::format(" stroke-dasharray=\"{}\"", s.dash),
            points);
        points.clear();
      }
    };
    for (std::size_t i = 0; i < x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.y[i])) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += fmt::format("{:.2f},{:.2f}", px(x[i]), py(s.y[i]));
    }
    flush();
    const double ly = top + 16 + 18.0 * static_cast<double>(k);
    svg += fmt::format(
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" "
        "stroke-width=\"2\"{}/>\n",
        left + 10, ly, left + 40, ly, s.color,
        s.dash.empty() ? "" : fmt::format(" stroke-dasharray=\"{}\"", s.dash));
    svg += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
        left + 46, ly + 4, escape_xml(s.name));
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace dce::plot
