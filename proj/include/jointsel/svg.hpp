#pragma once

// Minimal self-contained SVG rendering for the figure outputs: line charts
// (one polyline per series plus an optional horizontal reference line) and
// grid heatmaps with an optional diagonal overlay. No external assets; the
// CSV datasets remain the artifact of record.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "jointsel/io.hpp"

namespace jointsel {
namespace svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  double baseline = std::nan("");  // horizontal reference, drawn when finite
  std::string baseline_label;
};

struct Heatmap {
  // Overlay mark bits per cell.
  static constexpr int kMarkPrimary = 1;    // translucent blue fill
  static constexpr int kMarkSecondary = 2;  // red outline
  static constexpr int kMarkTertiary = 4;   // white outline

  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> x_ticks;             // column coordinates, ascending
  std::vector<double> y_ticks;             // row coordinates, ascending
  std::vector<std::vector<double>> cells;  // cells[row][col]
  std::vector<std::vector<int>> marks;     // optional, same shape as cells
  bool draw_diagonal = false;
};

namespace detail {

inline std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

inline const char* series_color(std::size_t index) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  return palette[index % (sizeof(palette) / sizeof(palette[0]))];
}

// Dark blue -> yellow ramp over [0,1].
inline std::string ramp_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(68 + t * (253 - 68)));
  const int g = static_cast<int>(std::lround(1 + t * (231 - 1)));
  const int b = static_cast<int>(std::lround(84 + t * (37 - 84)));
  std::ostringstream out;
  out << "rgb(" << r << ',' << g << ',' << b << ')';
  return out.str();
}

}  // namespace detail

inline std::string render_line_chart(const LineChart& chart) {
  const double width = 720, height = 480;
  const double left = 70, right = 40, top = 50, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  for (const Series& s : chart.series) {
    for (double v : s.x) { x_min = std::min(x_min, v); x_max = std::max(x_max, v); }
    for (double v : s.y) { y_min = std::min(y_min, v); y_max = std::max(y_max, v); }
  }
  if (std::isfinite(chart.baseline)) {
    y_min = std::min(y_min, chart.baseline);
    y_max = std::max(y_max, chart.baseline);
  }
  if (x_min > x_max) { x_min = 0; x_max = 1; }
  if (y_min > y_max) { y_min = 0; y_max = 1; }
  const double x_pad = (x_max - x_min) * 0.05 + 1e-12;
  const double y_pad = (y_max - y_min) * 0.08 + 1e-12;
  x_min -= x_pad; x_max += x_pad;
  y_min -= y_pad; y_max += y_pad;

  const auto px = [&](double x) {
    return left + (x - x_min) / (x_max - x_min) * plot_w;
  };
  const auto py = [&](double y) {
    return top + plot_h - (y - y_min) / (y_max - y_min) * plot_h;
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << detail::escape(chart.title) << "</text>\n";

  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

  for (int t = 0; t <= 4; ++t) {
    const double yv = y_min + (y_max - y_min) * t / 4.0;
    const double yy = py(yv);
    out << "<line x1=\"" << left - 4 << "\" y1=\"" << yy << "\" x2=\"" << left
        << "\" y2=\"" << yy << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << left - 8 << "\" y=\"" << yy + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << detail::fmt(yv) << "</text>\n";
    const double xv = x_min + (x_max - x_min) * t / 4.0;
    const double xx = px(xv);
    out << "<line x1=\"" << xx << "\" y1=\"" << top + plot_h << "\" x2=\""
        << xx << "\" y2=\"" << top + plot_h + 4 << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << xx << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << detail::fmt(xv) << "</text>\n";
  }
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << detail::escape(chart.x_label) << "</text>\n";
  out << "<text x=\"18\" y=\"" << top + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 "
      << top + plot_h / 2 << ")\">" << detail::escape(chart.y_label)
      << "</text>\n";

  if (std::isfinite(chart.baseline)) {
    const double yy = py(chart.baseline);
    out << "<line x1=\"" << left << "\" y1=\"" << yy << "\" x2=\""
        << left + plot_w << "\" y2=\"" << yy
        << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    if (!chart.baseline_label.empty())
      out << "<text x=\"" << left + plot_w - 6 << "\" y=\"" << yy - 6
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
             "font-size=\"11\">"
          << detail::escape(chart.baseline_label) << "</text>\n";
  }

  for (std::size_t s = 0; s < chart.series.size(); ++s) {
    const Series& series = chart.series[s];
    const char* color = detail::series_color(s);
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < series.x.size(); ++i) {
      if (i > 0) out << ' ';
      out << detail::fmt(px(series.x[i])) << ',' << detail::fmt(py(series.y[i]));
    }
    out << "\"/>\n";
    for (std::size_t i = 0; i < series.x.size(); ++i)
      out << "<circle cx=\"" << detail::fmt(px(series.x[i])) << "\" cy=\""
          << detail::fmt(py(series.y[i])) << "\" r=\"3\" fill=\"" << color
          << "\"/>\n";
    const double ly = top + 16 + 16 * static_cast<double>(s);
    out << "<line x1=\"" << left + plot_w - 150 << "\" y1=\"" << ly
        << "\" x2=\"" << left + plot_w - 126 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << left + plot_w - 120 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << detail::escape(series.label) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

inline std::string render_heatmap(const Heatmap& map) {
  const std::size_t rows = map.cells.size();
  const std::size_t cols = rows == 0 ? 0 : map.cells[0].size();
  const double width = 640, height = 560;
  const double left = 80, top = 50, cell_area = 440;
  const double cw = cols ? cell_area / static_cast<double>(cols) : 0;
  const double ch = rows ? cell_area / static_cast<double>(rows) : 0;

  double lo = 1e300, hi = -1e300;
  for (const auto& row : map.cells)
    for (double v : row) { lo = std::min(lo, v); hi = std::max(hi, v); }
  if (lo > hi) { lo = 0; hi = 1; }
  if (hi == lo) hi = lo + 1;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << detail::escape(map.title) << "</text>\n";

  // Row 0 is the lowest y tick; drawn bottom-up.
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double t = (map.cells[r][c] - lo) / (hi - lo);
      const double x = left + static_cast<double>(c) * cw;
      const double y = top + cell_area - static_cast<double>(r + 1) * ch;
      out << "<rect x=\"" << detail::fmt(x) << "\" y=\"" << detail::fmt(y)
          << "\" width=\"" << detail::fmt(cw) << "\" height=\""
          << detail::fmt(ch) << "\" fill=\"" << detail::ramp_color(t)
          << "\"/>\n";
    }
  }
  for (std::size_t r = 0; r < map.marks.size() && r < rows; ++r) {
    for (std::size_t c = 0; c < map.marks[r].size() && c < cols; ++c) {
      const int mark = map.marks[r][c];
      if (mark == 0) continue;
      const double x = left + static_cast<double>(c) * cw;
      const double y = top + cell_area - static_cast<double>(r + 1) * ch;
      if (mark & Heatmap::kMarkPrimary)
        out << "<rect x=\"" << detail::fmt(x) << "\" y=\"" << detail::fmt(y)
            << "\" width=\"" << detail::fmt(cw) << "\" height=\""
            << detail::fmt(ch) << "\" fill=\"blue\" fill-opacity=\"0.25\"/>\n";
      if (mark & Heatmap::kMarkSecondary)
        out << "<rect x=\"" << detail::fmt(x + 1) << "\" y=\""
            << detail::fmt(y + 1) << "\" width=\"" << detail::fmt(cw - 2)
            << "\" height=\"" << detail::fmt(ch - 2)
            << "\" fill=\"none\" stroke=\"red\" stroke-width=\"1.5\"/>\n";
      if (mark & Heatmap::kMarkTertiary)
        out << "<rect x=\"" << detail::fmt(x + 3) << "\" y=\""
            << detail::fmt(y + 3) << "\" width=\"" << detail::fmt(cw - 6)
            << "\" height=\"" << detail::fmt(ch - 6)
            << "\" fill=\"none\" stroke=\"white\" stroke-width=\"1.5\"/>\n";
    }
  }

  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\""
      << cell_area << "\" height=\"" << cell_area
      << "\" fill=\"none\" stroke=\"#333\"/>\n";

  if (map.draw_diagonal)
    out << "<line x1=\"" << left << "\" y1=\"" << top + cell_area
        << "\" x2=\"" << left + cell_area << "\" y2=\"" << top
        << "\" stroke=\"red\" stroke-width=\"2\"/>\n";

  for (std::size_t c = 0; c < map.x_ticks.size() && c < cols; ++c) {
    const double x = left + (static_cast<double>(c) + 0.5) * cw;
    out << "<text x=\"" << detail::fmt(x) << "\" y=\"" << top + cell_area + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"10\">"
        << detail::fmt(map.x_ticks[c]) << "</text>\n";
  }
  for (std::size_t r = 0; r < map.y_ticks.size() && r < rows; ++r) {
    const double y = top + cell_area - (static_cast<double>(r) + 0.5) * ch;
    out << "<text x=\"" << left - 8 << "\" y=\"" << detail::fmt(y + 3)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"10\">"
        << detail::fmt(map.y_ticks[r]) << "</text>\n";
  }
  out << "<text x=\"" << left + cell_area / 2 << "\" y=\"" << height - 30
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << detail::escape(map.x_label) << "</text>\n";
  out << "<text x=\"22\" y=\"" << top + cell_area / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 22 "
      << top + cell_area / 2 << ")\">" << detail::escape(map.y_label)
      << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace svg
}  // namespace jointsel
