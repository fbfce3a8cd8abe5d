#pragma once

#include <chrono>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

namespace hpobench::metrics {

/// Mean of |a - p| / |a|, as a fraction. Throws MetricError on a zero actual.
double mape(std::span<const double> actual, std::span<const double> predicted);
/// 1 - SSE / SST. Throws MetricError when actual is constant.
double r_squared(std::span<const double> actual, std::span<const double> predicted);
double rmse(std::span<const double> actual, std::span<const double> predicted);

enum class Variate { Univariate, Multivariate };

std::string_view name(Variate v);
Variate parse_variate(std::string_view text);

struct MetricRecord {
  std::string algorithm;
  Variate variate = Variate::Univariate;
  std::size_t sample_size = 0;
  double mape = 0.0;
  double r2 = 0.0;
  double runtime_seconds = 0.0;

  friend bool operator==(const MetricRecord&, const MetricRecord&) = default;
};

/// Monotonic wall time around `f`.
template <class F>
auto timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  if constexpr (std::is_void_v<std::invoke_result_t<F>>) {
    std::forward<F>(f)();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  } else {
    auto value = std::forward<F>(f)();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::pair<decltype(value), double>(std::move(value), seconds);
  }
}

}  // namespace hpobench::metrics
