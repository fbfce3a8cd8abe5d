#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hpobench/gbt.hpp"
#include "hpobench/search_space.hpp"

namespace hpobench::opt {

struct BudgetPolicy {
  int max_trials = 50;
  int patience = 20;  // ignored by random search

  void validate() const;
};

/// Minimisation problem on the unit cube [0, 1]^dimension.
struct UnitProblem {
  std::size_t dimension = 0;
  std::function<double(std::span<const double>)> objective;
  /// Uniform draw from the feasible set; empty means continuous uniform.
  std::function<std::vector<double>(std::mt19937_64&)> sampler;
};

struct UnitTrial {
  int index = 0;  // 1-based
  std::vector<double> point;
  double objective = 0.0;
  double elapsed = 0.0;  // seconds since the run started
};

struct UnitResult {
  std::string algorithm;
  std::vector<UnitTrial> history;
  std::size_t best_position = 0;  // into history
  double best_objective = 0.0;
  double runtime_seconds = 0.0;
  bool stopped_early = false;
  std::vector<std::string> notes;

  const UnitTrial& best() const { return history.at(best_position); }
};

enum class Algorithm { Random, Cmaes, Bayes, Pso, Ngopt };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::Random, Algorithm::Cmaes, Algorithm::Bayes, Algorithm::Pso,
                                               Algorithm::Ngopt};

std::string_view name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view text);

/// True iff the best objective has not strictly improved during the last
/// `patience` completed trials.
bool early_stop_check(std::span<const double> objectives, int patience);

UnitResult random_search(const UnitProblem& problem, const BudgetPolicy& budget, std::uint64_t seed);
UnitResult cmaes(const UnitProblem& problem, const BudgetPolicy& budget, std::uint64_t seed);
UnitResult bayesian(const UnitProblem& problem, const BudgetPolicy& budget, std::uint64_t seed);
UnitResult pso(const UnitProblem& problem, const BudgetPolicy& budget, std::uint64_t seed);
UnitResult ngopt(const UnitProblem& problem, const BudgetPolicy& budget, std::uint64_t seed);
UnitResult run(Algorithm a, const UnitProblem& problem, const BudgetPolicy& budget, std::uint64_t seed);

/// Portfolio rule used by ngopt: random search when budget < 2 * dimension,
/// CMA-ES when dimension <= 10 and budget <= 100, PSO otherwise.
Algorithm ngopt_select(std::size_t dimension, int budget);
std::string ngopt_rule(std::size_t dimension, int budget);

// --- CMA-ES ---------------------------------------------------------------
std::size_t cmaes_population_size(std::size_t dimension);
inline constexpr double kCmaesInitialSigma = 0.3;

// --- Bayesian optimisation ------------------------------------------------
inline constexpr int kBayesInitialTrials = 5;
inline constexpr int kBayesCandidates = 1024;

/// Expected improvement below `best` for a Gaussian posterior N(mu, sigma^2).
double expected_improvement(double mu, double sigma, double best);

// --- PSO ------------------------------------------------------------------
inline constexpr std::size_t kSwarmSize = 10;

struct PsoCoefficients {
  double inertia = 0.729;
  double cognitive = 1.49445;
  double social = 1.49445;
};

struct Particle {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> best_position;
  double best_value = 0.0;
};

/// One velocity and position update, with positions clamped to [0, 1].
void pso_move(Particle& p, std::span<const double> swarm_best, std::mt19937_64& rng,
              const PsoCoefficients& c = {});

// --- Hyperparameter-level wrappers ----------------------------------------

struct TrialRecord {
  int index = 0;
  gbt::HyperParams params;
  double objective = 0.0;
  double elapsed = 0.0;
};

struct OptimizationResult {
  std::string algorithm;
  gbt::HyperParams best_params;
  double best_objective = 0.0;
  std::vector<TrialRecord> history;
  double runtime_seconds = 0.0;
  bool stopped_early = false;
  std::vector<std::string> notes;
};

bool early_stop_check(const std::vector<TrialRecord>& history, int patience);

using HpObjective = std::function<double(const gbt::HyperParams&)>;

/// Grid-aware problem: points decode through `space`, draws are uniform per grid.
UnitProblem make_grid_problem(const HpObjective& objective, const search::SearchSpace& space);

OptimizationResult run_random_search(const HpObjective& objective, const search::SearchSpace& space,
                                     const BudgetPolicy& budget, std::uint64_t seed);
OptimizationResult run_cmaes(const HpObjective& objective, const search::SearchSpace& space,
                             const BudgetPolicy& budget, std::uint64_t seed);
OptimizationResult run_bayesian(const HpObjective& objective, const search::SearchSpace& space,
                                const BudgetPolicy& budget, std::uint64_t seed);
OptimizationResult run_pso(const HpObjective& objective, const search::SearchSpace& space,
                           const BudgetPolicy& budget, std::uint64_t seed);
OptimizationResult run_ngopt(const HpObjective& objective, const search::SearchSpace& space,
                             const BudgetPolicy& budget, std::uint64_t seed);
OptimizationResult run(Algorithm a, const HpObjective& objective, const search::SearchSpace& space,
                       const BudgetPolicy& budget, std::uint64_t seed);

}  // namespace hpobench::opt
