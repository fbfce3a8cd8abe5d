#include <doctest.h>

#include <cmath>
#include <thread>
#include <vector>

#include "hpobench/errors.hpp"
#include "hpobench/metrics.hpp"

using namespace hpobench;
using namespace hpobench::metrics;

TEST_CASE("mape") {
  const std::vector<double> a{100, 200};
  CHECK(mape(a, a) == 0.0);
  CHECK(mape(a, std::vector<double>{110, 180}) == doctest::Approx(0.10).epsilon(1e-12));
  CHECK_THROWS_AS(mape(std::vector<double>{0, 1}, std::vector<double>{1, 1}), MetricError);
  CHECK_THROWS_AS(mape(std::vector<double>{1}, std::vector<double>{1, 2}), MetricError);
  CHECK_THROWS_AS(mape(std::vector<double>{}, std::vector<double>{}), MetricError);
}

TEST_CASE("r_squared") {
  const std::vector<double> a{1, 2, 3};
  CHECK(r_squared(a, a) == 1.0);
  CHECK(r_squared(a, std::vector<double>{2, 2, 2}) == 0.0);
  CHECK(r_squared(a, std::vector<double>{3, 2, 1}) == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK_THROWS_AS(r_squared(std::vector<double>{4, 4, 4}, std::vector<double>{1, 2, 3}), MetricError);
  CHECK_THROWS_AS(r_squared(std::vector<double>{4}, std::vector<double>{4}), MetricError);
}

TEST_CASE("rmse") {
  CHECK(rmse(std::vector<double>{1, 4}, std::vector<double>{1, 1}) == doctest::Approx(std::sqrt(4.5)).epsilon(1e-12));
  CHECK(rmse(std::vector<double>{1, 4}, std::vector<double>{1, 2}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(rmse(std::vector<double>{3, 3}, std::vector<double>{3, 3}) == 0.0);
}

TEST_CASE("metrics are invariant to a shared permutation") {
  const std::vector<double> a{3, 9, 4, 7, 5}, p{2.5, 8, 4.5, 7.5, 6};
  const std::vector<double> ap{7, 5, 9, 3, 4}, pp{7.5, 6, 8, 2.5, 4.5};
  CHECK(mape(a, p) == doctest::Approx(mape(ap, pp)).epsilon(1e-14));
  CHECK(r_squared(a, p) == doctest::Approx(r_squared(ap, pp)).epsilon(1e-14));
}

TEST_CASE("timed") {
  const double noop = timed([] {});
  CHECK(noop >= 0.0);
  CHECK(noop < 0.010);
  const double slept = timed([] { std::this_thread::sleep_for(std::chrono::milliseconds(50)); });
  CHECK(slept >= 0.050);
  CHECK(slept <= 0.250);
  double inner = 0;
  const auto [value, outer] = timed([&] {
    inner = timed([] { std::this_thread::sleep_for(std::chrono::milliseconds(5)); });
    return 7;
  });
  CHECK(value == 7);
  CHECK(inner <= outer);
}

TEST_CASE("variate names") {
  CHECK(name(Variate::Univariate) == "univariate");
  CHECK(parse_variate("multivariate") == Variate::Multivariate);
  CHECK_THROWS_AS(parse_variate("bivariate"), ConfigError);
}
