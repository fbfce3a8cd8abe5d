#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "hpobench/gbt.hpp"
#include "hpobench/matrix.hpp"

namespace oracle {

struct BruteSplit {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

/// Exhaustive search over every (feature, midpoint) candidate for squared loss
/// with unit hessians; ties keep the lowest feature, then the lowest threshold.
inline BruteSplit best_split(const hpobench::Matrix& X, const std::vector<double>& g, const std::vector<std::size_t>& rows,
                             double min_child_weight) {
  BruteSplit best;
  const double min_rows = std::ceil(min_child_weight);
  for (std::size_t f = 0; f < X.cols(); ++f) {
    std::vector<double> values;
    for (auto r : rows) values.push_back(X(r, f));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
      const double thr = 0.5 * (values[k] + values[k + 1]);
      double gl = 0, gr = 0, hl = 0, hr = 0;
      for (auto r : rows) {
        if (X(r, f) < thr) {
          gl += g[r];
          hl += 1;
        } else {
          gr += g[r];
          hr += 1;
        }
      }
      if (hl < std::max(1.0, min_rows) || hr < std::max(1.0, min_rows)) continue;
      const double gain = 0.5 * (gl * gl / (hl + 1) + gr * gr / (hr + 1) - (gl + gr) * (gl + gr) / (hl + hr + 1));
      if (gain > best.gain) best = {static_cast<int>(f), thr, gain};
    }
  }
  return best;
}

/// Compares the fitted tree node by node against the brute-force tree; returns
/// an empty string on agreement or a description of the first mismatch.
inline std::string compare_tree(const hpobench::Matrix& X, const std::vector<double>& g, const hpobench::gbt::Tree& tree,
                                int node, const std::vector<std::size_t>& rows, int depth, int max_depth,
                                double min_child_weight) {
  const auto& n = tree.nodes.at(static_cast<std::size_t>(node));
  BruteSplit s;
  if (depth < max_depth && rows.size() >= 2) s = best_split(X, g, rows, min_child_weight);
  if (s.feature < 0) {
    if (!n.is_leaf()) return "node " + std::to_string(node) + " split but brute force found no positive gain";
    double G = 0;
    for (auto r : rows) G += g[r];
    const double w = -G / (static_cast<double>(rows.size()) + 1.0);
    if (std::abs(n.weight - w) > 1e-9 * std::max(1.0, std::abs(w)))
      return "leaf " + std::to_string(node) + " weight " + std::to_string(n.weight) + " != " + std::to_string(w);
    return {};
  }
  if (n.is_leaf()) return "node " + std::to_string(node) + " is a leaf but brute force splits";
  if (n.feature != s.feature || n.threshold != s.threshold)
    return "node " + std::to_string(node) + " split (" + std::to_string(n.feature) + ", " + std::to_string(n.threshold) +
           ") != brute force (" + std::to_string(s.feature) + ", " + std::to_string(s.threshold) + ")";
  std::vector<std::size_t> left, right;
  for (auto r : rows) (X(r, static_cast<std::size_t>(s.feature)) < s.threshold ? left : right).push_back(r);
  auto msg = compare_tree(X, g, tree, n.left, left, depth + 1, max_depth, min_child_weight);
  if (!msg.empty()) return msg;
  return compare_tree(X, g, tree, n.right, right, depth + 1, max_depth, min_child_weight);
}

struct SplitCase {
  hpobench::Matrix X;
  std::vector<double> y;
  hpobench::gbt::HyperParams hp;
};

/// Seeded small dataset: n <= 50, depth <= 2, integer-valued features with repeats.
inline SplitCase make_split_case(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> n_dist(5, 50), p_dist(1, 4), depth_dist(1, 2), level_dist(2, 12);
  std::normal_distribution<double> noise(0.0, 1.0);
  const int n = n_dist(rng), p = p_dist(rng);
  hpobench::Matrix X(static_cast<std::size_t>(n), static_cast<std::size_t>(p));
  std::vector<int> levels(static_cast<std::size_t>(p));
  for (auto& l : levels) l = level_dist(rng);
  std::vector<double> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int f = 0; f < p; ++f)
      X(static_cast<std::size_t>(i), static_cast<std::size_t>(f)) =
          std::uniform_int_distribution<int>(0, levels[static_cast<std::size_t>(f)])(rng);
    y[static_cast<std::size_t>(i)] = 2.0 * X(static_cast<std::size_t>(i), 0) + noise(rng);
  }
  hpobench::gbt::HyperParams hp;
  hp.max_depth = depth_dist(rng);
  hp.n_estimators = 1;
  hp.learning_rate = 1.0;
  hp.min_child_weight = (seed % 3 == 0) ? 3.0 : 1.0;
  return {std::move(X), std::move(y), hp};
}

/// Empty string when the first fitted tree equals the brute-force tree.
inline std::string check_split_case(const SplitCase& c) {
  const auto model = hpobench::gbt::fit(c.X, c.y, c.hp, 1);
  double mean = 0;
  for (double v : c.y) mean += v;
  mean /= static_cast<double>(c.y.size());
  std::vector<double> g(c.y.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = mean - c.y[i];
  std::vector<std::size_t> rows(c.y.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  if (model.trees.empty()) return "no tree fitted";
  return compare_tree(c.X, g, model.trees[0], 0, rows, 0, c.hp.max_depth, c.hp.min_child_weight);
}

}  // namespace oracle
