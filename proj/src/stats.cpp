#include "hpobench/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hpobench/errors.hpp"

namespace hpobench::stats {

std::vector<double> rank_with_ties(std::span<const double> values) {
  if (values.empty()) throw StatsInputError("cannot rank an empty vector");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

namespace {

struct Pooled {
  std::vector<double> mean_ranks;
  std::vector<std::size_t> sizes;
  double n = 0.0;
  double tie_sum = 0.0;  // sum of t^3 - t over tie blocks
};

Pooled pool(const Groups& groups) {
  if (groups.size() < 2) throw StatsInputError("need at least two groups");
  Pooled out;
  std::vector<double> all;
  for (const auto& g : groups) {
    if (g.empty()) throw StatsInputError("empty group");
    for (double v : g)
      if (std::isnan(v)) throw StatsInputError("NaN in group data");
    all.insert(all.end(), g.begin(), g.end());
    out.sizes.push_back(g.size());
  }
  const auto ranks = rank_with_ties(all);
  std::size_t pos = 0;
  for (const auto& g : groups) {
    double sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) sum += ranks[pos + i];
    out.mean_ranks.push_back(sum / static_cast<double>(g.size()));
    pos += g.size();
  }
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    const double t = static_cast<double>(j - i);
    out.tie_sum += t * t * t - t;
    i = j;
  }
  out.n = static_cast<double>(all.size());
  return out;
}

}  // namespace

KruskalWallisReport kruskal_wallis(const Groups& groups) {
  const Pooled p = pool(groups);
  KruskalWallisReport r;
  r.df = static_cast<int>(groups.size()) - 1;
  r.mean_ranks = p.mean_ranks;
  r.group_sizes = p.sizes;
  const double n = p.n;
  const double correction = 1.0 - p.tie_sum / (n * n * n - n);
  if (correction <= 0.0) return r;
  r.tie_correction = correction;
  double s = 0.0;
  for (std::size_t i = 0; i < groups.size(); ++i) s += static_cast<double>(p.sizes[i]) * p.mean_ranks[i] * p.mean_ranks[i];
  const double h = (12.0 / (n * (n + 1.0)) * s - 3.0 * (n + 1.0)) / correction;
  r.H = std::max(h, 0.0);
  r.p_value = boost::math::gamma_q(0.5 * r.df, 0.5 * r.H);
  return r;
}

PairwiseCell PairwiseMatrix::at(std::size_t i, std::size_t j) const {
  if (i == j || i >= k || j >= k) throw StatsInputError("invalid pair index");
  const bool swapped = i > j;
  if (swapped) std::swap(i, j);
  for (PairwiseCell c : cells)
    if (c.i == i && c.j == j) {
      if (swapped) {
        std::swap(c.i, c.j);
        c.difference = -c.difference;
        c.z = -c.z;
      }
      return c;
    }
  throw StatsInputError("pair not found");
}

PairwiseMatrix dunn_bonferroni(const Groups& groups, double alpha) {
  const Pooled p = pool(groups);
  PairwiseMatrix m;
  m.k = groups.size();
  m.alpha = alpha;
  m.multiplier = static_cast<double>(m.k * (m.k - 1) / 2);
  const double n = p.n;
  const double variance = n * (n + 1.0) / 12.0 - p.tie_sum / (12.0 * (n - 1.0));
  for (std::size_t i = 0; i < m.k; ++i)
    for (std::size_t j = i + 1; j < m.k; ++j) {
      PairwiseCell c;
      c.i = i;
      c.j = j;
      c.difference = p.mean_ranks[i] - p.mean_ranks[j];
      const double se =
          std::sqrt(std::max(variance, 0.0) * (1.0 / static_cast<double>(p.sizes[i]) + 1.0 / static_cast<double>(p.sizes[j])));
      if (se > 0.0) {
        c.z = c.difference / se;
        c.p_raw = std::erfc(std::abs(c.z) / std::numbers::sqrt2);
      } else {
        c.z = 0.0;
        c.p_raw = 1.0;
      }
      c.p_adjusted = std::min(1.0, c.p_raw * m.multiplier);
      c.significant = c.p_adjusted < alpha;
      m.cells.push_back(c);
    }
  return m;
}

}  // namespace hpobench::stats
