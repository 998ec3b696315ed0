#pragma once

#include <string>
#include <vector>

namespace rombox::harness {

struct ChartSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Standalone SVG line chart. With `log_y` non-positive samples are dropped.
std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<ChartSeries>& series,
                       bool log_y);

}  // namespace rombox::harness
