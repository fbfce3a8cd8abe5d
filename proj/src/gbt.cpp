#include "hpobench/gbt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "hpobench/errors.hpp"

namespace hpobench::gbt {

void HyperParams::validate() const {
  if (max_depth < 0) throw FitError("max_depth must be non-negative");
  if (!(learning_rate > 0.0)) throw FitError("learning_rate must be positive");
  if (n_estimators < 0) throw FitError("n_estimators must be non-negative");
  if (!(subsample > 0.0 && subsample <= 1.0)) throw FitError("subsample must lie in (0, 1]");
  if (!(colsample_bytree > 0.0 && colsample_bytree <= 1.0)) throw FitError("colsample_bytree must lie in (0, 1]");
  if (!(min_child_weight >= 0.0)) throw FitError("min_child_weight must be non-negative");
}

std::string to_string(const HyperParams& hp) {
  std::ostringstream os;
  os << "max_depth=" << hp.max_depth << " learning_rate=" << hp.learning_rate
     << " n_estimators=" << hp.n_estimators << " subsample=" << hp.subsample
     << " colsample_bytree=" << hp.colsample_bytree << " min_child_weight=" << hp.min_child_weight;
  return os.str();
}

double Tree::predict(std::span<const double> x) const {
  int id = 0;
  while (!nodes[static_cast<std::size_t>(id)].is_leaf()) {
    const auto& n = nodes[static_cast<std::size_t>(id)];
    id = x[static_cast<std::size_t>(n.feature)] < n.threshold ? n.left : n.right;
  }
  return nodes[static_cast<std::size_t>(id)].weight;
}

int Tree::depth() const {
  std::vector<int> d(nodes.size(), 0);
  int deepest = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    deepest = std::max(deepest, d[i]);
    if (!nodes[i].is_leaf()) {
      d[static_cast<std::size_t>(nodes[i].left)] = d[i] + 1;
      d[static_cast<std::size_t>(nodes[i].right)] = d[i] + 1;
    }
  }
  return deepest;
}

PreparedData::PreparedData(Matrix X, std::vector<double> y) : X_(std::move(X)), y_(std::move(y)) {
  if (X_.rows() != y_.size()) throw ShapeError("design matrix rows differ from target length");
  const std::size_t n = rows();
  const std::size_t p = cols();
  order_.resize(n * p);
  sorted_.resize(n * p);
  std::vector<std::uint32_t> idx(n);
  for (std::size_t f = 0; f < p; ++f) {
    std::iota(idx.begin(), idx.end(), 0u);
    std::stable_sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) { return X_(a, f) < X_(b, f); });
    for (std::size_t k = 0; k < n; ++k) {
      order_[f * n + k] = idx[k];
      sorted_[f * n + k] = X_(idx[k], f);
    }
  }
}

namespace {

struct Entry {
  double value;
  double grad;
  std::uint32_t row;
};

struct NodeRange {
  int node = 0;  // index into Tree::nodes
  std::size_t begin = 0;
  std::size_t end = 0;
  double g = 0.0;

  std::uint32_t count() const noexcept { return static_cast<std::uint32_t>(end - begin); }
};

struct BestSplit {
  double score = 0.0;  // split score without the parent term
  int feature = -1;
  double threshold = 0.0;
  double g_left = 0.0;
  std::uint32_t n_left = 0;
};

// Unit hessians: hessian sums are row counts, `inv[k]` is 1 / (k + lambda).
// A node owns the same [begin, end) range in every per-column sorted list.
Tree grow_tree(const PreparedData& data, const std::vector<double>& grad, const std::vector<char>& row_in,
               const std::vector<std::size_t>& cols, const HyperParams& hp, const std::vector<double>& inv,
               std::vector<Entry>& lists, std::vector<Entry>& scratch, std::vector<Entry>& right_buf,
               std::vector<char>& go_left) {
  const std::size_t n = data.rows();
  const std::size_t k = cols.size();
  // Smallest row count whose hessian sum reaches min_child_weight.
  const auto min_rows = static_cast<std::uint32_t>(std::max(0.0, std::ceil(hp.min_child_weight)));

  std::size_t n_in = 0;
  for (std::size_t i = 0; i < n; ++i) n_in += row_in[i] ? 1 : 0;
  // One spare slot for the branchless fill.
  lists.resize(k * n_in + 1);
  scratch.resize(k * n_in + 1);
  right_buf.resize(n_in);
  for (std::size_t j = 0; j < k; ++j) {
    const auto order = data.order(cols[j]);
    const auto values = data.sorted_values(cols[j]);
    Entry* out = lists.data() + j * n_in;
    for (std::size_t q = 0; q < n; ++q) {
      const std::uint32_t r = order[q];
      *out = {values[q], grad[r], r};
      out += row_in[r];
    }
  }

  Tree tree;
  tree.nodes.emplace_back();
  NodeRange root{0, 0, n_in, 0.0};
  for (std::size_t i = 0; i < n; ++i)
    if (row_in[i]) root.g += grad[i];
  std::vector<NodeRange> level{root};

  auto finalize_leaf = [&](const NodeRange& nr) {
    auto& node = tree.nodes[static_cast<std::size_t>(nr.node)];
    node.weight = leaf_weight(nr.g, static_cast<double>(nr.count()));
    node.hess_sum = nr.count();
  };

  const Matrix& X = data.X();
  for (int depth = 0; !level.empty(); ++depth) {
    std::vector<NodeRange> next;
    for (const auto& nr : level) {
      const std::uint32_t count = nr.count();
      if (depth >= hp.max_depth || count < 2 || count < 2 * min_rows) {
        finalize_leaf(nr);
        continue;
      }
      const double parent_score = nr.g * nr.g * inv[count];
      BestSplit best;
      best.score = parent_score;
      // Candidate cuts sit before position q, for q in [lo, hi].
      const std::uint32_t lo = std::max<std::uint32_t>(1, min_rows);
      const std::uint32_t hi = count - std::max<std::uint32_t>(1, min_rows);
      for (std::size_t j = 0; j < k && lo <= hi; ++j) {
        const Entry* e = lists.data() + j * n_in + nr.begin;
        double g_left = 0.0;
        for (std::uint32_t q = 0; q < lo; ++q) g_left += e[q].grad;
        double last = e[lo - 1].value;
        for (std::uint32_t q = lo; q <= hi; ++q) {
          const double v = e[q].value;
          if (v != last) {
            const double g_right = nr.g - g_left;
            const double score = g_left * g_left * inv[q] + g_right * g_right * inv[count - q];
            if (score > best.score) {
              double thr = last + 0.5 * (v - last);
              if (!(thr > last)) thr = v;
              best = {score, static_cast<int>(cols[j]), thr, g_left, q};
            }
          }
          g_left += e[q].grad;
          last = v;
        }
      }
      const double gain = 0.5 * (best.score - parent_score) - kGamma;
      if (best.feature < 0 || !(gain > 0.0)) {
        finalize_leaf(nr);
        continue;
      }

      const int left_id = static_cast<int>(tree.nodes.size());
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      auto& node = tree.nodes[static_cast<std::size_t>(nr.node)];
      node.feature = best.feature;
      node.threshold = best.threshold;
      node.gain = gain;
      node.left = left_id;
      node.right = left_id + 1;
      node.hess_sum = count;

      const auto f = static_cast<std::size_t>(best.feature);
      for (std::size_t q = nr.begin; q < nr.end; ++q) {
        const std::uint32_t r = lists[q].row;
        go_left[r] = X(r, f) < best.threshold ? 1 : 0;
      }
      const std::uint32_t n_right = count - best.n_left;
      auto splittable = [&](std::uint32_t c) { return depth + 1 < hp.max_depth && c >= 2 && c >= 2 * min_rows; };
      if (splittable(best.n_left) || splittable(n_right)) {
        for (std::size_t j = 0; j < k; ++j) {
          Entry* src = lists.data() + j * n_in;
          Entry* dst = scratch.data() + j * n_in;
          // Branchless stable partition.
          std::size_t l = nr.begin;
          std::size_t rc = 0;
          for (std::size_t q = nr.begin; q < nr.end; ++q) {
            const std::size_t gl = static_cast<std::size_t>(go_left[src[q].row]);
            dst[l] = src[q];
            right_buf[rc] = src[q];
            l += gl;
            rc += 1 - gl;
          }
          std::copy_n(right_buf.begin(), rc, dst + l);
        }
      }
      const std::size_t mid = nr.begin + best.n_left;
      next.push_back({left_id, nr.begin, mid, best.g_left});
      next.push_back({left_id + 1, mid, nr.end, nr.g - best.g_left});
    }
    lists.swap(scratch);
    level = std::move(next);
  }
  return tree;
}

}  // namespace

GbtModel fit(const PreparedData& data, const HyperParams& hp, std::uint64_t seed) {
  hp.validate();
  const std::size_t n = data.rows();
  const std::size_t p = data.cols();
  if (n == 0) throw FitError("cannot fit on an empty dataset");
  if (p == 0) throw FitError("cannot fit without predictors");

  GbtModel model;
  model.learning_rate = hp.learning_rate;
  model.n_features = p;
  const auto& y = data.y();
  model.base_score = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> pred(n, model.base_score);
  std::vector<double> grad(n);
  std::vector<double> inv(n + 1);
  for (std::size_t k = 0; k <= n; ++k) inv[k] = 1.0 / (static_cast<double>(k) + kLambda);
  std::vector<char> row_in(n, 1);
  std::vector<char> go_left(n, 0);
  std::vector<Entry> lists, scratch, right_buf;
  std::vector<std::size_t> all_cols(p);
  std::iota(all_cols.begin(), all_cols.end(), std::size_t{0});
  const std::size_t n_cols =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(hp.colsample_bytree * static_cast<double>(p) + 1e-9)));

  model.trees.reserve(static_cast<std::size_t>(hp.n_estimators));
  for (int t = 0; t < hp.n_estimators; ++t) {
    for (std::size_t i = 0; i < n; ++i) grad[i] = pred[i] - y[i];
    if (hp.subsample < 1.0)
      for (std::size_t i = 0; i < n; ++i) row_in[i] = unit(rng) < hp.subsample ? 1 : 0;
    std::vector<std::size_t> cols = all_cols;
    if (n_cols < p) {
      std::shuffle(cols.begin(), cols.end(), rng);
      cols.resize(n_cols);
      std::sort(cols.begin(), cols.end());
    }
    Tree tree = grow_tree(data, grad, row_in, cols, hp, inv, lists, scratch, right_buf, go_left);
    const Matrix& X = data.X();
    for (std::size_t i = 0; i < n; ++i) pred[i] += hp.learning_rate * tree.predict(X.row(i));
    model.trees.push_back(std::move(tree));
  }
  return model;
}

GbtModel fit(const Matrix& X, std::span<const double> y, const HyperParams& hp, std::uint64_t seed) {
  return fit(PreparedData(X, std::vector<double>(y.begin(), y.end())), hp, seed);
}

GbtModel fit(const features::SupervisedDataset& ds, const HyperParams& hp, std::uint64_t seed) {
  return fit(ds.X, ds.y, hp, seed);
}

double predict_row(const GbtModel& model, std::span<const double> x) {
  double sum = 0.0;
  for (const auto& tree : model.trees) sum += tree.predict(x);
  return model.base_score + model.learning_rate * sum;
}

std::vector<double> predict(const GbtModel& model, const Matrix& X) {
  if (X.cols() != model.n_features)
    throw ShapeError("model expects " + std::to_string(model.n_features) + " columns, got " +
                     std::to_string(X.cols()));
  std::vector<double> out(X.rows());
  for (std::size_t i = 0; i < X.rows(); ++i) out[i] = predict_row(model, X.row(i));
  return out;
}

std::string dump(const GbtModel& model) {
  std::ostringstream os;
  os << "base_score=" << model.base_score << " learning_rate=" << model.learning_rate << '\n';
  for (std::size_t t = 0; t < model.trees.size(); ++t) {
    os << "tree " << t << '\n';
    const auto& nodes = model.trees[t].nodes;
    std::vector<std::pair<int, int>> stack{{0, 1}};
    while (!stack.empty()) {
      const auto [id, indent] = stack.back();
      stack.pop_back();
      const auto& nd = nodes[static_cast<std::size_t>(id)];
      os << std::string(static_cast<std::size_t>(indent) * 2, ' ');
      if (nd.is_leaf()) {
        os << "leaf " << nd.weight << '\n';
      } else {
        os << "x[" << nd.feature << "] < " << nd.threshold << " gain=" << nd.gain << '\n';
        stack.emplace_back(nd.right, indent + 1);
        stack.emplace_back(nd.left, indent + 1);
      }
    }
  }
  return os.str();
}

}  // namespace hpobench::gbt
