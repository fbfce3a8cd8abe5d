#include <doctest.h>

#include <algorithm>

#include "hpobench/errors.hpp"
#include "hpobench/feature_builder.hpp"

using namespace hpobench;
using namespace hpobench::features;

namespace {

data::TimeSeriesFrame series(std::vector<double> y, std::vector<std::vector<double>> exog = {}) {
  data::TimeSeriesFrame f;
  for (std::size_t i = 0; i < y.size(); ++i) f.timestamps.push_back(data::Timestamp{std::chrono::hours(i)});
  f.target = std::move(y);
  for (std::size_t c = 0; c < exog.size(); ++c) f.feature_names.push_back("x" + std::to_string(c));
  f.features = std::move(exog);
  return f;
}

}  // namespace

TEST_CASE("univariate lag rows") {
  const auto ds = make_supervised(series({1, 2, 3, 4, 5}), {2, false});
  REQUIRE(ds.size() == 3);
  CHECK(ds.X.cols() == 2);
  CHECK(ds.X.row(0)[0] == 1);
  CHECK(ds.X.row(0)[1] == 2);
  CHECK(ds.X.row(1)[0] == 2);
  CHECK(ds.X.row(1)[1] == 3);
  CHECK(ds.X.row(2)[0] == 3);
  CHECK(ds.X.row(2)[1] == 4);
  CHECK(ds.y == std::vector<double>{3, 4, 5});
  CHECK(ds.target_index == std::vector<std::size_t>{2, 3, 4});
}

TEST_CASE("window of n - 1 gives one row; n or more is an error") {
  CHECK(make_supervised(series({1, 2, 3, 4, 5}), {4, false}).size() == 1);
  CHECK_THROWS_AS(make_supervised(series({1, 2, 3}), {3, false}), InsufficientHistoryError);
  CHECK_THROWS_AS(make_supervised(series({1, 2, 3}), {0, false}), InsufficientHistoryError);
}

TEST_CASE("multivariate width is S * (1 + D)") {
  const auto ds = make_supervised(series({1, 2, 3, 4, 5}, {{10, 20, 30, 40, 50}}), {2, true});
  CHECK(ds.X.cols() == 4);
  CHECK(ds.X.row(0)[2] == 10);
  CHECK(ds.X.row(0)[3] == 20);
  const auto three = make_supervised(series(std::vector<double>(40, 1.0), {std::vector<double>(40, 0.0),
                                                                           std::vector<double>(40, 0.0),
                                                                           std::vector<double>(40, 0.0)}),
                                     {5, true});
  CHECK(three.X.cols() == 5 * 4);
  CHECK(three.feature_names.size() == 20);
  CHECK(make_supervised(series(std::vector<double>(40, 1.0), {std::vector<double>(40, 0.0)}), {5, false}).X.cols() == 5);
}

TEST_CASE("feature names run oldest to newest per block") {
  const auto ds = make_supervised(series({1, 2, 3, 4}, {{0, 0, 0, 0}}), {2, true});
  CHECK(ds.feature_names == std::vector<std::string>{"nat_demand_lag2", "nat_demand_lag1", "x0_lag2", "x0_lag1"});
}

TEST_CASE("no leakage: perturbing y_j leaves rows with target index <= j unchanged") {
  std::vector<double> y(30);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = static_cast<double>(i * i % 17);
  const auto base = make_supervised(series(y), {4, false});
  for (std::size_t j = 0; j < y.size(); ++j) {
    auto y2 = y;
    y2[j] += 100.0;
    const auto pert = make_supervised(series(y2), {4, false});
    for (std::size_t r = 0; r < base.size(); ++r) {
      if (base.target_index[r] > j) continue;
      const auto a = base.X.row(r);
      const auto b = pert.X.row(r);
      CHECK(std::equal(a.begin(), a.end(), b.begin()));
    }
  }
}

TEST_CASE("strictly increasing series gives strictly increasing y") {
  std::vector<double> y(50);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = 0.5 * static_cast<double>(i) + 1.0;
  const auto ds = make_supervised(series(y), {6, false});
  CHECK(std::adjacent_find(ds.y.begin(), ds.y.end(), std::greater_equal<>()) == ds.y.end());
}

TEST_CASE("chrono_split") {
  std::vector<double> y(14);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = static_cast<double>(i);
  const auto ds = make_supervised(series(y), {4, false});
  REQUIRE(ds.size() == 10);
  const auto s = chrono_split(ds, 0.2);
  CHECK(s.train.size() == 8);
  CHECK(s.test.size() == 2);
  CHECK(s.split_index == 8);
  CHECK(s.train.target_times.back() < s.test.target_times.front());

  const auto two = make_supervised(series({1, 2, 3, 4}), {2, false});
  const auto half = chrono_split(two, 0.5);
  CHECK(half.train.size() == 1);
  CHECK(half.test.size() == 1);

  CHECK_THROWS_AS(chrono_split(ds, 0.0), SplitError);
  CHECK_THROWS_AS(chrono_split(ds, 1.0), SplitError);
  CHECK_THROWS_AS(chrono_split(ds, 0.99), SplitError);
  CHECK(test_rows_for(10, 0.2) == 2);
  CHECK(test_rows_for(11, 0.2) == 3);
}
