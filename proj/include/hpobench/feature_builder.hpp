#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hpobench/data_ingest.hpp"
#include "hpobench/matrix.hpp"

namespace hpobench::features {

struct LagConfig {
  std::size_t window = 24;  // past hours per predictor block
  bool multivariate = false;
};

/// Lag-window design matrix: row i holds hours [i, i+window) and predicts hour i+window.
struct SupervisedDataset {
  Matrix X;
  std::vector<double> y;
  std::vector<std::string> feature_names;
  std::vector<data::Timestamp> target_times;
  /// Source-frame index of each row's target hour.
  std::vector<std::size_t> target_index;

  std::size_t size() const noexcept { return y.size(); }
  bool empty() const noexcept { return y.empty(); }

  SupervisedDataset slice(std::size_t begin, std::size_t end) const;
};

struct SplitPair {
  SupervisedDataset train;
  SupervisedDataset test;
  std::size_t split_index = 0;
};

/// Demand lags come first, then each exogenous column's lags in frame order;
/// inside a block columns run oldest to newest.
SupervisedDataset make_supervised(const data::TimeSeriesFrame& frame, const LagConfig& cfg);

/// The last ceil(m * test_fraction) rows form the test set.
SplitPair chrono_split(const SupervisedDataset& ds, double test_fraction);

/// Number of test rows chrono_split produces for m rows.
std::size_t test_rows_for(std::size_t m, double test_fraction);

}  // namespace hpobench::features
