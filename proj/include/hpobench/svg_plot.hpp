#pragma once

#include <string>
#include <vector>

namespace hpobench::plot {

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
};

/// Min-max scales all y values of a chart jointly into [0, 1]; a constant chart maps to 0.
void scale_unit(LineChart& chart);

/// Standalone SVG text, byte-stable for a given chart. `raw` holds the
/// unscaled values and is embedded as an XML comment table.
std::string render_svg(const LineChart& chart, const LineChart& raw);

}  // namespace hpobench::plot
