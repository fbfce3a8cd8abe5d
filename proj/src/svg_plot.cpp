#include "hpobench/svg_plot.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "hpobench/errors.hpp"
#include "hpobench/results_io.hpp"

namespace hpobench::plot {

void scale_unit(LineChart& chart) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : chart.series)
    for (double v : s.y) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  for (auto& s : chart.series)
    for (double& v : s.y) v = hi > lo ? (v - lo) / (hi - lo) : 0.0;
}

namespace {

constexpr double kWidth = 720, kHeight = 440;
constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 60;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
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

std::string render_svg(const LineChart& chart, const LineChart& raw) {
  if (chart.series.size() != raw.series.size()) throw ShapeError("scaled and raw charts differ in series count");
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : chart.series) {
    if (s.x.size() != s.y.size()) throw ShapeError("series x and y lengths differ");
    for (double x : s.x) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
    }
  }
  if (!(x_lo <= x_hi)) x_lo = x_hi = 0.0;
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return x_hi > x_lo ? kLeft + (x - x_lo) / (x_hi - x_lo) * pw : kLeft + pw / 2; };
  auto py = [&](double y) { return kTop + (1.0 - y) * ph; };

  std::string o;
  o += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
       "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o += "<!-- data\nseries,x,value,scaled\n";
  for (std::size_t i = 0; i < chart.series.size(); ++i) {
    const auto& s = chart.series[i];
    const auto& r = raw.series[i];
    for (std::size_t j = 0; j < s.x.size(); ++j)
      o += s.label + "," + io::format_double(s.x[j]) + "," + io::format_double(r.y.at(j)) + "," +
           io::format_double(s.y[j]) + "\n";
  }
  o += "-->\n";
  o += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) + "\" fill=\"white\"/>\n";
  o += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" + escape(chart.title) +
       "</text>\n";
  o += "<g stroke=\"#333\" stroke-width=\"1\">\n";
  o += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(kLeft + pw) + "\" y2=\"" +
       num(kTop + ph) + "\"/>\n";
  o += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(kTop + ph) + "\"/>\n";
  o += "</g>\n";

  for (int t = 0; t <= 4; ++t) {
    const double v = t / 4.0;
    o += "<line x1=\"" + num(kLeft - 4) + "\" y1=\"" + num(py(v)) + "\" x2=\"" + num(kLeft + pw) + "\" y2=\"" + num(py(v)) +
         "\" stroke=\"#ddd\"/>\n";
    o += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py(v) + 4) + "\" text-anchor=\"end\">" + num(v) + "</text>\n";
  }
  std::vector<double> ticks;
  for (const auto& s : chart.series) ticks.insert(ticks.end(), s.x.begin(), s.x.end());
  std::sort(ticks.begin(), ticks.end());
  ticks.erase(std::unique(ticks.begin(), ticks.end()), ticks.end());
  const std::size_t stride = std::max<std::size_t>(1, (ticks.size() + 9) / 10);
  for (std::size_t i = 0; i < ticks.size(); i += stride) {
    o += "<line x1=\"" + num(px(ticks[i])) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(px(ticks[i])) + "\" y2=\"" +
         num(kTop + ph + 4) + "\" stroke=\"#333\"/>\n";
    o += "<text x=\"" + num(px(ticks[i])) + "\" y=\"" + num(kTop + ph + 18) + "\" text-anchor=\"middle\">" +
         io::format_double(ticks[i]) + "</text>\n";
  }
  o += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 16) + "\" text-anchor=\"middle\">" +
       escape(chart.x_label) + "</text>\n";
  o += "<text x=\"18\" y=\"" + num(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       num(kTop + ph / 2) + ")\">" + escape(chart.y_label) + "</text>\n";

  for (std::size_t i = 0; i < chart.series.size(); ++i) {
    const auto& s = chart.series[i];
    const std::string color = kPalette[i % std::size(kPalette)];
    o += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\" points=\"";
    for (std::size_t j = 0; j < s.x.size(); ++j) o += (j ? " " : "") + num(px(s.x[j])) + "," + num(py(s.y[j]));
    o += "\"/>\n";
    for (std::size_t j = 0; j < s.x.size(); ++j)
      o += "<circle cx=\"" + num(px(s.x[j])) + "\" cy=\"" + num(py(s.y[j])) + "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
    const double ly = kTop + 10 + 20.0 * static_cast<double>(i);
    const double lx = kLeft + pw + 20;
    o += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 24) + "\" y2=\"" + num(ly) +
         "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    o += "<text x=\"" + num(lx + 30) + "\" y=\"" + num(ly + 4) + "\">" + escape(s.label) + "</text>\n";
  }
  o += "</svg>\n";
  return o;
}

}  // namespace hpobench::plot
