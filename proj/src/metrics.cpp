#include "hpobench/metrics.hpp"

#include <cmath>

#include "hpobench/errors.hpp"

namespace hpobench::metrics {

namespace {

void check_lengths(std::span<const double> a, std::span<const double> p, std::size_t min_len) {
  if (a.size() != p.size()) throw MetricError("actual and predicted lengths differ");
  if (a.size() < min_len) throw MetricError("too few observations");
}

}  // namespace

double mape(std::span<const double> actual, std::span<const double> predicted) {
  check_lengths(actual, predicted, 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (actual[i] == 0.0) throw MetricError("zero actual value at index " + std::to_string(i));
    sum += std::abs(actual[i] - predicted[i]) / std::abs(actual[i]);
  }
  return sum / static_cast<double>(actual.size());
}

double r_squared(std::span<const double> actual, std::span<const double> predicted) {
  check_lengths(actual, predicted, 2);
  double mean = 0.0;
  for (double a : actual) mean += a;
  mean /= static_cast<double>(actual.size());
  double sse = 0.0, sst = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    sse += (actual[i] - predicted[i]) * (actual[i] - predicted[i]);
    sst += (actual[i] - mean) * (actual[i] - mean);
  }
  if (sst == 0.0) throw MetricError("actual values are constant");
  return 1.0 - sse / sst;
}

double rmse(std::span<const double> actual, std::span<const double> predicted) {
  check_lengths(actual, predicted, 1);
  double sse = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) sse += (actual[i] - predicted[i]) * (actual[i] - predicted[i]);
  return std::sqrt(sse / static_cast<double>(actual.size()));
}

std::string_view name(Variate v) { return v == Variate::Univariate ? "univariate" : "multivariate"; }

Variate parse_variate(std::string_view text) {
  if (text == "univariate" || text == "uni") return Variate::Univariate;
  if (text == "multivariate" || text == "multi") return Variate::Multivariate;
  throw ConfigError("unknown variate: " + std::string(text));
}

}  // namespace hpobench::metrics
