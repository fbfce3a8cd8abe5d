#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hpobench/optimizers.hpp"
#include "tracker.hpp"

namespace hpobench::opt {

std::size_t cmaes_population_size(std::size_t dimension) {
  if (dimension == 0) return 4;
  return 4 + static_cast<std::size_t>(std::floor(3.0 * std::log(static_cast<double>(dimension))));
}

namespace {

struct Strategy {
  Eigen::Index n;
  std::size_t lambda;
  std::size_t mu;
  Eigen::VectorXd weights;
  double mueff, cc, cs, c1, cmu, damps, chi_n;

  explicit Strategy(std::size_t dim) : n(static_cast<Eigen::Index>(dim)) {
    lambda = cmaes_population_size(dim);
    mu = lambda / 2;
    weights.resize(static_cast<Eigen::Index>(mu));
    for (std::size_t i = 0; i < mu; ++i)
      weights[static_cast<Eigen::Index>(i)] = std::log(static_cast<double>(mu) + 0.5) - std::log(static_cast<double>(i + 1));
    weights /= weights.sum();
    mueff = 1.0 / weights.squaredNorm();
    const double d = static_cast<double>(dim);
    cc = (4.0 + mueff / d) / (d + 4.0 + 2.0 * mueff / d);
    cs = (mueff + 2.0) / (d + mueff + 5.0);
    c1 = 2.0 / ((d + 1.3) * (d + 1.3) + mueff);
    cmu = std::min(1.0 - c1, 2.0 * (mueff - 2.0 + 1.0 / mueff) / ((d + 2.0) * (d + 2.0) + mueff));
    damps = 1.0 + 2.0 * std::max(0.0, std::sqrt((mueff - 1.0) / (d + 1.0)) - 1.0) + cs;
    chi_n = std::sqrt(d) * (1.0 - 1.0 / (4.0 * d) + 1.0 / (21.0 * d * d));
  }
};

}  // namespace

UnitResult cmaes(const UnitProblem& problem, const BudgetPolicy& budget, std::uint64_t seed) {
  detail::Tracker tracker(problem, budget, /*use_patience=*/true, "cmaes");
  const Strategy s(problem.dimension);
  const Eigen::Index n = s.n;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  Eigen::VectorXd mean = Eigen::VectorXd::Constant(n, 0.5);
  double sigma = kCmaesInitialSigma;
  Eigen::MatrixXd C = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd B = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd D = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd pc = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd ps = Eigen::VectorXd::Zero(n);
  int generation = 0;

  while (!tracker.done()) {
    ++generation;
    std::vector<Eigen::VectorXd> points;
    std::vector<double> values;
    for (std::size_t k = 0; k < s.lambda && !tracker.done(); ++k) {
      Eigen::VectorXd z(n);
      for (Eigen::Index i = 0; i < n; ++i) z[i] = normal(rng);
      Eigen::VectorXd x = mean + sigma * (B * D.asDiagonal() * z);
      x = x.cwiseMax(0.0).cwiseMin(1.0);
      values.push_back(tracker.evaluate(std::vector<double>(x.data(), x.data() + n)));
      points.push_back(std::move(x));
    }
    if (points.size() < s.lambda) break;

    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    const Eigen::VectorXd old_mean = mean;
    mean.setZero();
    for (std::size_t i = 0; i < s.mu; ++i) mean += s.weights[static_cast<Eigen::Index>(i)] * points[order[i]];

    const Eigen::VectorXd step = (mean - old_mean) / sigma;
    const Eigen::MatrixXd inv_sqrt_c = B * D.cwiseInverse().asDiagonal() * B.transpose();
    ps = (1.0 - s.cs) * ps + std::sqrt(s.cs * (2.0 - s.cs) * s.mueff) * (inv_sqrt_c * step);
    const double ps_norm = ps.norm();
    const double decay = 1.0 - std::pow(1.0 - s.cs, 2.0 * generation);
    const bool hsig = ps_norm / std::sqrt(decay) / s.chi_n < 1.4 + 2.0 / (static_cast<double>(n) + 1.0);
    pc = (1.0 - s.cc) * pc + (hsig ? std::sqrt(s.cc * (2.0 - s.cc) * s.mueff) : 0.0) * step;

    Eigen::MatrixXd rank_mu = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < s.mu; ++i) {
      const Eigen::VectorXd y = (points[order[i]] - old_mean) / sigma;
      rank_mu += s.weights[static_cast<Eigen::Index>(i)] * y * y.transpose();
    }
    const double hsig_correction = hsig ? 0.0 : s.cc * (2.0 - s.cc);
    C = (1.0 - s.c1 - s.cmu) * C + s.c1 * (pc * pc.transpose() + hsig_correction * C) + s.cmu * rank_mu;
    sigma *= std::exp((s.cs / s.damps) * (ps_norm / s.chi_n - 1.0));
    if (!std::isfinite(sigma) || sigma <= 0.0) sigma = kCmaesInitialSigma;

    C = 0.5 * (C + C.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(C);
    const bool ok = eig.info() == Eigen::Success && C.allFinite() && eig.eigenvalues().minCoeff() > 1e-14;
    if (ok) {
      B = eig.eigenvectors();
      D = eig.eigenvalues().cwiseSqrt();
    } else {
      tracker.note("generation " + std::to_string(generation) + ": covariance not positive definite, reset to identity");
      C.setIdentity();
      B.setIdentity();
      D.setOnes();
      pc.setZero();
    }
  }
  return tracker.finish();
}

}  // namespace hpobench::opt
