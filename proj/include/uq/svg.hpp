#pragma once

#include <string>
#include <vector>

namespace uq {

// Minimal diagnostic line/scatter chart writer. Charts are for eyeballing
// results; CSV files are the canonical outputs.
class SvgChart {
 public:
  SvgChart(std::string title, std::string x_label, std::string y_label);

  void add_line(const std::vector<double>& x, const std::vector<double>& y,
                const std::string& color, const std::string& label = "");
  void add_points(const std::vector<double>& x, const std::vector<double>& y,
                  const std::string& color, const std::string& label = "");

  // Secondary series plotted against a right-hand axis (e.g. a threshold
  // scale next to a metric scale).
  void add_line_secondary(const std::vector<double>& x,
                          const std::vector<double>& y,
                          const std::string& color,
                          const std::string& label = "");

  void write(const std::string& path) const;

 private:
  struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string color;
    std::string label;
    bool points = false;
    bool secondary = false;
  };

  std::string title_, x_label_, y_label_;
  std::vector<Series> series_;
};

}  // namespace uq
