#include "uq/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "uq/errors.hpp"

namespace uq {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 64.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 48.0;

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (lo > hi) {
      lo = 0.0;
      hi = 1.0;
    }
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
  }
};

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4g", v);
  return buffer;
}

}  // namespace

SvgChart::SvgChart(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)),
      y_label_(std::move(y_label)) {}

void SvgChart::add_line(const std::vector<double>& x,
                        const std::vector<double>& y, const std::string& color,
                        const std::string& label) {
  series_.push_back({x, y, color, label, false, false});
}

void SvgChart::add_points(const std::vector<double>& x,
                          const std::vector<double>& y,
                          const std::string& color, const std::string& label) {
  series_.push_back({x, y, color, label, true, false});
}

void SvgChart::add_line_secondary(const std::vector<double>& x,
                                  const std::vector<double>& y,
                                  const std::string& color,
                                  const std::string& label) {
  series_.push_back({x, y, color, label, false, true});
}

void SvgChart::write(const std::string& path) const {
  Range xr, yr, yr2;
  bool has_secondary = false;
  for (const Series& s : series_) {
    for (double v : s.x) xr.include(v);
    for (double v : s.y) (s.secondary ? yr2 : yr).include(v);
    has_secondary |= s.secondary;
  }
  xr.pad();
  yr.pad();
  yr2.pad();

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto sx = [&](double v) {
    return kMarginLeft + plot_w * (v - xr.lo) / (xr.hi - xr.lo);
  };
  const auto sy = [&](double v, const Range& r) {
    return kMarginTop + plot_h * (1.0 - (v - r.lo) / (r.hi - r.lo));
  };

  std::ofstream out(path);
  if (!out) throw IoError("SvgChart: cannot open " + path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth
      << "' height='" << kHeight << "' font-family='sans-serif' font-size='12'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << kWidth / 2 << "' y='22' text-anchor='middle' "
      << "font-size='15'>" << title_ << "</text>\n";

  // Axes and tick labels.
  out << "<rect x='" << kMarginLeft << "' y='" << kMarginTop << "' width='"
      << plot_w << "' height='" << plot_h
      << "' fill='none' stroke='#444'/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    out << "<text x='" << sx(fx) << "' y='" << kHeight - kMarginBottom + 16
        << "' text-anchor='middle'>" << fmt(fx) << "</text>\n";
    out << "<text x='" << kMarginLeft - 6 << "' y='" << sy(fy, yr) + 4
        << "' text-anchor='end'>" << fmt(fy) << "</text>\n";
    if (has_secondary) {
      const double fy2 = yr2.lo + (yr2.hi - yr2.lo) * i / 4.0;
      out << "<text x='" << kWidth - kMarginRight + 6 << "' y='"
          << sy(fy2, yr2) + 4 << "' text-anchor='start'>" << fmt(fy2)
          << "</text>\n";
    }
  }
  out << "<text x='" << kWidth / 2 << "' y='" << kHeight - 10
      << "' text-anchor='middle'>" << x_label_ << "</text>\n";
  out << "<text x='16' y='" << kHeight / 2
      << "' text-anchor='middle' transform='rotate(-90 16 " << kHeight / 2
      << ")'>" << y_label_ << "</text>\n";

  double legend_y = kMarginTop + 14;
  for (const Series& s : series_) {
    const Range& r = s.secondary ? yr2 : yr;
    if (s.points) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        out << "<circle cx='" << sx(s.x[i]) << "' cy='" << sy(s.y[i], r)
            << "' r='2.5' fill='" << s.color << "'/>\n";
      }
    } else {
      out << "<polyline fill='none' stroke='" << s.color
          << "' stroke-width='1.5' points='";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        out << sx(s.x[i]) << ',' << sy(s.y[i], r) << ' ';
      }
      out << "'/>\n";
    }
    if (!s.label.empty()) {
      out << "<text x='" << kMarginLeft + 10 << "' y='" << legend_y
          << "' fill='" << s.color << "'>" << s.label
          << (s.secondary ? " (right)" : "") << "</text>\n";
      legend_y += 14;
    }
  }
  out << "</svg>\n";
}

}  // namespace uq
