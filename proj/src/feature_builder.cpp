#include "hpobench/feature_builder.hpp"

#include <cmath>

#include "hpobench/errors.hpp"

namespace hpobench::features {

SupervisedDataset SupervisedDataset::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > size()) throw BoundsError("dataset slice out of range");
  SupervisedDataset out;
  out.X = X.slice_rows(begin, end);
  out.y.assign(y.begin() + static_cast<std::ptrdiff_t>(begin), y.begin() + static_cast<std::ptrdiff_t>(end));
  out.feature_names = feature_names;
  out.target_times.assign(target_times.begin() + static_cast<std::ptrdiff_t>(begin),
                          target_times.begin() + static_cast<std::ptrdiff_t>(end));
  out.target_index.assign(target_index.begin() + static_cast<std::ptrdiff_t>(begin),
                          target_index.begin() + static_cast<std::ptrdiff_t>(end));
  return out;
}

SupervisedDataset make_supervised(const data::TimeSeriesFrame& frame, const LagConfig& cfg) {
  frame.validate();
  const std::size_t S = cfg.window;
  if (S == 0) throw InsufficientHistoryError("lag window must be at least 1");
  const std::size_t n = frame.size();
  if (n <= S)
    throw InsufficientHistoryError("frame of length " + std::to_string(n) + " cannot supply a lag window of " +
                                   std::to_string(S));

  std::vector<const std::vector<double>*> blocks{&frame.target};
  std::vector<std::string> block_names{frame.target_name};
  if (cfg.multivariate)
    for (std::size_t c = 0; c < frame.features.size(); ++c) {
      blocks.push_back(&frame.features[c]);
      block_names.push_back(frame.feature_names[c]);
    }

  const std::size_t m = n - S;
  const std::size_t p = S * blocks.size();
  SupervisedDataset ds;
  ds.X = Matrix(m, p);
  ds.y.resize(m);
  ds.target_times.resize(m);
  ds.target_index.resize(m);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t j = 0; j < S; ++j) ds.feature_names.push_back(block_names[b] + "_lag" + std::to_string(S - j));

  for (std::size_t i = 0; i < m; ++i) {
    auto row = ds.X.row(i);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto& col = *blocks[b];
      for (std::size_t j = 0; j < S; ++j) row[b * S + j] = col[i + j];
    }
    ds.y[i] = frame.target[i + S];
    ds.target_times[i] = frame.timestamps[i + S];
    ds.target_index[i] = i + S;
  }
  return ds;
}

std::size_t test_rows_for(std::size_t m, double test_fraction) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw SplitError("test fraction must lie in (0, 1)");
  return static_cast<std::size_t>(std::ceil(static_cast<double>(m) * test_fraction - 1e-9));
}

SplitPair chrono_split(const SupervisedDataset& ds, double test_fraction) {
  const std::size_t m = ds.size();
  const std::size_t n_test = test_rows_for(m, test_fraction);
  if (n_test == 0 || n_test >= m)
    throw SplitError("split of " + std::to_string(m) + " rows at fraction " + std::to_string(test_fraction) +
                     " leaves an empty partition");
  const std::size_t split = m - n_test;
  return {ds.slice(0, split), ds.slice(split, m), split};
}

}  // namespace hpobench::features
