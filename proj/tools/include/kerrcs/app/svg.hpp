#pragma once

#include <optional>
#include <string>
#include <vector>

namespace kerrcs::app {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<std::optional<double>> y;  // gaps break the polyline
};

/// Static line plot with axis ticks and a legend.
std::string render_svg(const std::string& title, const std::string& x_label,
                       const std::vector<PlotSeries>& series);

}  // namespace kerrcs::app
