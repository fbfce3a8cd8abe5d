#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hpobench/feature_builder.hpp"
#include "hpobench/matrix.hpp"

namespace hpobench::gbt {

struct HyperParams {
  int max_depth = 6;
  double learning_rate = 0.3;
  int n_estimators = 100;
  double subsample = 1.0;
  double colsample_bytree = 1.0;
  double min_child_weight = 1.0;

  /// Throws FitError when a field is outside its legal range.
  void validate() const;

  friend bool operator==(const HyperParams&, const HyperParams&) = default;
};

std::string to_string(const HyperParams& hp);

/// Flat-array tree node. Internal nodes route `x[feature] < threshold` left.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double weight = 0.0;  // leaves only
  double gain = 0.0;    // internal only
  double hess_sum = 0.0;

  bool is_leaf() const noexcept { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double predict(std::span<const double> x) const;
  int depth() const;
  friend bool operator==(const Tree&, const Tree&) = default;
};

struct GbtModel {
  double base_score = 0.0;
  double learning_rate = 0.0;
  std::size_t n_features = 0;
  std::vector<Tree> trees;

  friend bool operator==(const GbtModel&, const GbtModel&) = default;
};

// Fixed regularisation: L2 on leaf weights and minimum split loss.
inline constexpr double kLambda = 1.0;
inline constexpr double kGamma = 0.0;

/// Squared-error boosting with exact greedy splits. Deterministic for a seed.
GbtModel fit(const Matrix& X, std::span<const double> y, const HyperParams& hp, std::uint64_t seed);
GbtModel fit(const features::SupervisedDataset& ds, const HyperParams& hp, std::uint64_t seed);

std::vector<double> predict(const GbtModel& model, const Matrix& X);
double predict_row(const GbtModel& model, std::span<const double> x);

/// Split score for a candidate partition of gradient/hessian sums.
inline double split_gain(double g_left, double h_left, double g_right, double h_right) {
  const double g = g_left + g_right;
  const double h = h_left + h_right;
  return 0.5 * (g_left * g_left / (h_left + kLambda) + g_right * g_right / (h_right + kLambda) -
                g * g / (h + kLambda)) -
         kGamma;
}

inline double leaf_weight(double g, double h) { return -g / (h + kLambda); }

/// Indented text rendering of every tree, for debugging.
std::string dump(const GbtModel& model);

}  // namespace hpobench::gbt

namespace hpobench::gbt {

/// Training matrix with per-feature sort orders computed once, so repeated
/// fits on the same rows (one per optimizer trial) skip the presort.
class PreparedData {
 public:
  PreparedData(Matrix X, std::vector<double> y);

  const Matrix& X() const noexcept { return X_; }
  const std::vector<double>& y() const noexcept { return y_; }
  std::size_t rows() const noexcept { return X_.rows(); }
  std::size_t cols() const noexcept { return X_.cols(); }

  /// Row indices of column `f` in ascending value order (ties by row index).
  std::span<const std::uint32_t> order(std::size_t f) const {
    return {order_.data() + f * rows(), rows()};
  }
  /// Column `f` values in that same order.
  std::span<const double> sorted_values(std::size_t f) const {
    return {sorted_.data() + f * rows(), rows()};
  }

 private:
  Matrix X_;
  std::vector<double> y_;
  std::vector<std::uint32_t> order_;
  std::vector<double> sorted_;
};

GbtModel fit(const PreparedData& data, const HyperParams& hp, std::uint64_t seed);

}  // namespace hpobench::gbt
