#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hpobench::stats {

using Groups = std::vector<std::vector<double>>;

/// Ascending ranks 1..N; ties share the average of their span.
std::vector<double> rank_with_ties(std::span<const double> values);

struct KruskalWallisReport {
  double H = 0.0;
  int df = 0;
  double p_value = 1.0;
  std::vector<double> mean_ranks;
  std::vector<std::size_t> group_sizes;
  double tie_correction = 1.0;
};

/// Tie-corrected H with a chi-square(k - 1) upper tail; all-tied input gives H = 0, p = 1.
KruskalWallisReport kruskal_wallis(const Groups& groups);

struct PairwiseCell {
  std::size_t i = 0;
  std::size_t j = 0;
  double difference = 0.0;  // MR_i - MR_j
  double z = 0.0;
  double p_raw = 1.0;
  double p_adjusted = 1.0;
  bool significant = false;
};

struct PairwiseMatrix {
  std::size_t k = 0;
  double alpha = 0.05;
  double multiplier = 1.0;
  /// Unordered pairs with i < j, in lexicographic order.
  std::vector<PairwiseCell> cells;

  /// Cell for (i, j) in either order; the difference and z flip sign when i > j.
  PairwiseCell at(std::size_t i, std::size_t j) const;
};

/// Dunn's test with tie-adjusted variance and Bonferroni correction.
PairwiseMatrix dunn_bonferroni(const Groups& groups, double alpha = 0.05);

}  // namespace hpobench::stats
