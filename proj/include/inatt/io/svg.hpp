#pragma once

// Minimal static SVG rendering of figure data. The CSV is the contract; this
// is a convenience view of the same numbers.

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "inatt/io/csv.hpp"

namespace inatt::io {

struct Polyline {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

struct Cell {
  double x0, y0, x1, y1;
  std::string color;
};

class SvgPlot {
public:
  SvgPlot(double x_min, double x_max, double y_min, double y_max) : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max) {}

  void add(Polyline line) { lines_.push_back(std::move(line)); }
  void add(Cell cell) { cells_.push_back(std::move(cell)); }
  void marker(double x, double y, std::string label) { markers_.push_back({x, y, std::move(label)}); }

  void write(std::ostream& os, const std::string& title) const {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    os << "<title>" << title << "</title>\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    for (const auto& c : cells_) {
      const double left = px(c.x0);
      const double top = py(c.y1);
      os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(px(c.x1) - left)
         << "\" height=\"" << num(py(c.y0) - top) << "\" fill=\"" << c.color << "\" stroke=\"none\"/>\n";
    }
    os << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin
       << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
       << kHeight - kMargin << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin / 3 << "\" font-size=\"11\">" << num(x_min_)
       << "</text>\n";
    os << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin / 3
       << "\" font-size=\"11\" text-anchor=\"end\">" << num(x_max_) << "</text>\n";
    os << "<text x=\"4\" y=\"" << kHeight - kMargin << "\" font-size=\"11\">" << num(y_min_) << "</text>\n";
    os << "<text x=\"4\" y=\"" << kMargin << "\" font-size=\"11\">" << num(y_max_) << "</text>\n";
    double legend_y = kMargin;
    for (const auto& l : lines_) {
      os << "<polyline fill=\"none\" stroke=\"" << l.color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < l.x.size(); ++i) {
        if (i > 0) os << ' ';
        os << num(px(l.x[i])) << ',' << num(py(l.y[i]));
      }
      os << "\"/>\n";
      os << "<text x=\"" << kWidth - kMargin + 4 << "\" y=\"" << num(legend_y) << "\" font-size=\"11\" fill=\""
         << l.color << "\">" << l.label << "</text>\n";
      legend_y += 14.0;
    }
    for (const auto& m : markers_) {
      os << "<circle cx=\"" << num(px(m.x)) << "\" cy=\"" << num(py(m.y)) << "\" r=\"3\" fill=\"black\"/>\n";
      os << "<text x=\"" << num(px(m.x) + 5) << "\" y=\"" << num(py(m.y) - 5) << "\" font-size=\"11\">" << m.label
         << "</text>\n";
    }
    os << "</svg>\n";
  }

private:
  static constexpr double kWidth = 640.0;
  static constexpr double kHeight = 480.0;
  static constexpr double kMargin = 48.0;

  struct Marker {
    double x, y;
    std::string label;
  };

  [[nodiscard]] double px(double x) const {
    return kMargin + (x - x_min_) / (x_max_ - x_min_) * (kWidth - 2.0 * kMargin);
  }
  [[nodiscard]] double py(double y) const {
    return kHeight - kMargin - (y - y_min_) / (y_max_ - y_min_) * (kHeight - 2.0 * kMargin);
  }
  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
  }

  double x_min_, x_max_, y_min_, y_max_;
  std::vector<Polyline> lines_;
  std::vector<Cell> cells_;
  std::vector<Marker> markers_;
};

}  // namespace inatt::io
