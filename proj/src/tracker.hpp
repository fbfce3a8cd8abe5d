#pragma once

#include <chrono>
#include <random>
#include <vector>

#include "hpobench/optimizers.hpp"

namespace hpobench::opt::detail {

/// Shared budget, patience, and best-so-far bookkeeping for one optimizer run.
class Tracker {
 public:
  Tracker(const UnitProblem& problem, const BudgetPolicy& budget, bool use_patience, std::string algorithm);

  /// Clamps `point` to the cube, evaluates it, and records the trial.
  /// A throwing or NaN objective is recorded as +inf.
  double evaluate(std::vector<double> point);

  bool done() const;
  int evaluations() const noexcept { return static_cast<int>(result_.history.size()); }
  int remaining() const noexcept { return budget_.max_trials - evaluations(); }
  double best_objective() const noexcept { return result_.best_objective; }
  const std::vector<double>& best_point() const { return result_.best().point; }
  const std::vector<UnitTrial>& history() const noexcept { return result_.history; }
  std::vector<double> sample(std::mt19937_64& rng) const;
  void note(std::string text) { result_.notes.push_back(std::move(text)); }

  UnitResult finish();

 private:
  const UnitProblem& problem_;
  BudgetPolicy budget_;
  bool use_patience_;
  std::vector<double> objectives_;
  UnitResult result_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace hpobench::opt::detail
