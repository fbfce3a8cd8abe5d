#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <vector>

#include "hpobench/feature_builder.hpp"
#include "hpobench/gbt.hpp"

namespace hpobench::objective {

enum class Mode { Holdout, Cv5 };

inline constexpr std::size_t kFolds = 5;

using FitCounter = std::shared_ptr<std::atomic<long>>;

struct ObjectiveSpec {
  features::SupervisedDataset dataset;  // training rows only
  Mode mode = Mode::Holdout;
  double holdout_fraction = 0.2;
  std::uint64_t seed = 0;
  /// Incremented once per model fit when set.
  FitCounter fit_counter;
};

/// Sizes of the 5 contiguous folds; the first m % 5 folds get one extra row.
std::vector<std::size_t> cv_fold_sizes(std::size_t m);

/// Validation RMSE on the later holdout_fraction of the rows, in scaled units.
double eval_holdout(const ObjectiveSpec& spec, const gbt::HyperParams& hp);
/// Mean RMSE over 5 contiguous folds.
double eval_cv5(const ObjectiveSpec& spec, const gbt::HyperParams& hp);

/// Reusable evaluator: splits and presorts the training rows once.
class Evaluator {
 public:
  explicit Evaluator(ObjectiveSpec spec);

  double operator()(const gbt::HyperParams& hp) const;
  Mode mode() const noexcept { return spec_.mode; }

 private:
  struct Part {
    gbt::PreparedData train;
    Matrix X_val;
    std::vector<double> y_val;
  };

  ObjectiveSpec spec_;
  std::vector<Part> parts_;
};

}  // namespace hpobench::objective
