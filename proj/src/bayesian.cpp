#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

#include "hpobench/optimizers.hpp"
#include "tracker.hpp"

namespace hpobench::opt {

double expected_improvement(double mu, double sigma, double best) {
  const double diff = best - mu;
  if (!(sigma > 0.0)) return std::max(diff, 0.0);
  const double z = diff / sigma;
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  return diff * cdf + sigma * pdf;
}

namespace {

constexpr double kLengthscales[] = {0.05, 0.1, 0.2, 0.3, 0.5, 0.8, 1.2, 2.0};
constexpr double kSignalVariances[] = {0.25, 0.5, 1.0, 2.0, 4.0};
constexpr double kBaseJitter = 1e-6;
constexpr double kMaxJitter = 1e-2;

struct GpFit {
  double lengthscale;
  double signal;
  double jitter;
  Eigen::LLT<Eigen::MatrixXd> llt;
  Eigen::VectorXd alpha;
  double log_likelihood;
};

Eigen::MatrixXd sq_dist(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Eigen::VectorXd an = a.rowwise().squaredNorm();
  const Eigen::VectorXd bn = b.rowwise().squaredNorm();
  Eigen::MatrixXd d = (-2.0 * a * b.transpose()).colwise() + an;
  d.rowwise() += bn.transpose();
  return d.cwiseMax(0.0);
}

std::optional<GpFit> fit_one(const Eigen::MatrixXd& dist, const Eigen::VectorXd& y, double ell, double s2) {
  const Eigen::Index n = y.size();
  const Eigen::MatrixXd K = s2 * (-dist / (2.0 * ell * ell)).array().exp().matrix();
  for (double jitter = kBaseJitter; jitter <= kMaxJitter * (1.0 + 1e-9); jitter *= 10.0) {
    Eigen::MatrixXd Kj = K;
    Kj.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(Kj);
    if (llt.info() != Eigen::Success) continue;
    Eigen::VectorXd alpha = llt.solve(y);
    if (!alpha.allFinite()) continue;
    const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    const double ll = -0.5 * y.dot(alpha) - 0.5 * log_det - 0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
    if (!std::isfinite(ll)) continue;
    return GpFit{ell, s2, jitter, std::move(llt), std::move(alpha), ll};
  }
  return std::nullopt;
}

}  // namespace

UnitResult bayesian(const UnitProblem& problem, const BudgetPolicy& budget, std::uint64_t seed) {
  detail::Tracker tracker(problem, budget, /*use_patience=*/true, "bayes");
  std::mt19937_64 rng(seed);
  const auto d = static_cast<Eigen::Index>(problem.dimension);

  while (!tracker.done()) {
    if (tracker.evaluations() < kBayesInitialTrials) {
      tracker.evaluate(tracker.sample(rng));
      continue;
    }

    const auto& hist = tracker.history();
    std::vector<std::size_t> rows;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hist.size(); ++i)
      if (std::isfinite(hist[i].objective)) worst = std::max(worst, hist[i].objective);

    std::vector<std::vector<double>> candidates(kBayesCandidates);
    for (auto& c : candidates) c = tracker.sample(rng);

    if (!std::isfinite(worst)) {
      tracker.note("trial " + std::to_string(tracker.evaluations() + 1) + ": no finite objectives, uniform sample");
      tracker.evaluate(candidates.front());
      continue;
    }

    const auto n = static_cast<Eigen::Index>(hist.size());
    Eigen::MatrixXd X(n, d);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& t = hist[static_cast<std::size_t>(i)];
      for (Eigen::Index j = 0; j < d; ++j) X(i, j) = t.point[static_cast<std::size_t>(j)];
      y[i] = std::isfinite(t.objective) ? t.objective : worst;
    }
    const double y_mean = y.mean();
    const double y_sd = std::sqrt((y.array() - y_mean).square().sum() / static_cast<double>(n));
    const double scale = y_sd > 0.0 ? y_sd : 1.0;
    const Eigen::VectorXd ys = (y.array() - y_mean) / scale;
    const double best = ys.minCoeff();

    const Eigen::MatrixXd dist = sq_dist(X, X);
    std::optional<GpFit> gp;
    for (double ell : kLengthscales)
      for (double s2 : kSignalVariances) {
        auto f = fit_one(dist, ys, ell, s2);
        if (f && (!gp || f->log_likelihood > gp->log_likelihood)) gp = std::move(f);
      }

    if (!gp) {
      tracker.note("trial " + std::to_string(tracker.evaluations() + 1) + ": GP solve failed, uniform sample");
      tracker.evaluate(candidates.front());
      continue;
    }

    Eigen::MatrixXd Q(static_cast<Eigen::Index>(candidates.size()), d);
    for (Eigen::Index i = 0; i < Q.rows(); ++i)
      for (Eigen::Index j = 0; j < d; ++j) Q(i, j) = candidates[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    const Eigen::MatrixXd Ks = gp->signal * (-sq_dist(X, Q) / (2.0 * gp->lengthscale * gp->lengthscale)).array().exp().matrix();
    const Eigen::VectorXd mu = Ks.transpose() * gp->alpha;
    const Eigen::MatrixXd V = gp->llt.matrixL().solve(Ks);
    const Eigen::VectorXd var = (gp->signal - V.colwise().squaredNorm().transpose().array()).cwiseMax(0.0);

    std::size_t pick = 0;
    double best_ei = -1.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      const double ei = expected_improvement(mu[ii], std::sqrt(var[ii]), best);
      if (ei > best_ei) {
        best_ei = ei;
        pick = i;
      }
    }
    tracker.evaluate(std::move(candidates[pick]));
  }
  return tracker.finish();
}

}  // namespace hpobench::opt
