#include "hpobench/objective.hpp"

#include "hpobench/errors.hpp"
#include "hpobench/metrics.hpp"

namespace hpobench::objective {

std::vector<std::size_t> cv_fold_sizes(std::size_t m) {
  if (m < kFolds) throw SplitError("cross-validation needs at least one row per fold");
  std::vector<std::size_t> sizes(kFolds, m / kFolds);
  for (std::size_t i = 0; i < m % kFolds; ++i) ++sizes[i];
  return sizes;
}

namespace {

Matrix stack_rows(const Matrix& X, std::size_t skip_begin, std::size_t skip_end) {
  Matrix out(X.rows() - (skip_end - skip_begin), X.cols());
  std::size_t r = 0;
  for (std::size_t i = 0; i < X.rows(); ++i) {
    if (i >= skip_begin && i < skip_end) continue;
    auto src = X.row(i);
    std::copy(src.begin(), src.end(), out.row(r++).begin());
  }
  return out;
}

}  // namespace

Evaluator::Evaluator(ObjectiveSpec spec) : spec_(std::move(spec)) {
  const auto& ds = spec_.dataset;
  if (ds.empty()) throw FitError("objective dataset is empty");
  if (spec_.mode == Mode::Holdout) {
    const std::size_t m = ds.size();
    const std::size_t n_val = features::test_rows_for(m, spec_.holdout_fraction);
    if (n_val >= m) throw SplitError("holdout leaves no training rows");
    const std::size_t cut = m - n_val;
    parts_.push_back({gbt::PreparedData(ds.X.slice_rows(0, cut), {ds.y.begin(), ds.y.begin() + static_cast<std::ptrdiff_t>(cut)}),
                      ds.X.slice_rows(cut, m), {ds.y.begin() + static_cast<std::ptrdiff_t>(cut), ds.y.end()}});
    return;
  }
  std::size_t begin = 0;
  for (std::size_t size : cv_fold_sizes(ds.size())) {
    const std::size_t end = begin + size;
    std::vector<double> y_train;
    y_train.reserve(ds.size() - size);
    y_train.insert(y_train.end(), ds.y.begin(), ds.y.begin() + static_cast<std::ptrdiff_t>(begin));
    y_train.insert(y_train.end(), ds.y.begin() + static_cast<std::ptrdiff_t>(end), ds.y.end());
    parts_.push_back({gbt::PreparedData(stack_rows(ds.X, begin, end), std::move(y_train)), ds.X.slice_rows(begin, end),
                      {ds.y.begin() + static_cast<std::ptrdiff_t>(begin), ds.y.begin() + static_cast<std::ptrdiff_t>(end)}});
    begin = end;
  }
}

double Evaluator::operator()(const gbt::HyperParams& hp) const {
  double total = 0.0;
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    const auto& part = parts_[k];
    const auto model = gbt::fit(part.train, hp, spec_.seed + k);
    if (spec_.fit_counter) spec_.fit_counter->fetch_add(1, std::memory_order_relaxed);
    total += metrics::rmse(part.y_val, gbt::predict(model, part.X_val));
  }
  return total / static_cast<double>(parts_.size());
}

double eval_holdout(const ObjectiveSpec& spec, const gbt::HyperParams& hp) {
  ObjectiveSpec s = spec;
  s.mode = Mode::Holdout;
  return Evaluator(std::move(s))(hp);
}

double eval_cv5(const ObjectiveSpec& spec, const gbt::HyperParams& hp) {
  ObjectiveSpec s = spec;
  s.mode = Mode::Cv5;
  return Evaluator(std::move(s))(hp);
}

}  // namespace hpobench::objective
