#include "hpobench/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hpobench/errors.hpp"
#include "tracker.hpp"

namespace hpobench::opt {

void BudgetPolicy::validate() const {
  if (max_trials < 1) throw ConfigError("max_trials must be at least 1");
  if (patience < 0) throw ConfigError("patience must be non-negative");
  if (patience > max_trials) throw ConfigError("patience must not exceed max_trials");
}

std::string_view name(Algorithm a) {
  switch (a) {
    case Algorithm::Random: return "random";
    case Algorithm::Cmaes: return "cmaes";
    case Algorithm::Bayes: return "bayes";
    case Algorithm::Pso: return "pso";
    case Algorithm::Ngopt: return "ngopt";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) {
  for (auto a : kAllAlgorithms)
    if (name(a) == text) return a;
  return std::nullopt;
}

bool early_stop_check(std::span<const double> objectives, int patience) {
  if (objectives.empty()) return false;
  std::size_t best = 0;
  for (std::size_t i = 1; i < objectives.size(); ++i)
    if (objectives[i] < objectives[best]) best = i;
  const auto since_best = static_cast<long>(objectives.size() - 1 - best);
  return since_best >= patience;
}

bool early_stop_check(const std::vector<TrialRecord>& history, int patience) {
  std::vector<double> objectives;
  objectives.reserve(history.size());
  for (const auto& t : history) objectives.push_back(t.objective);
  return early_stop_check(objectives, patience);
}

namespace detail {

Tracker::Tracker(const UnitProblem& problem, const BudgetPolicy& budget, bool use_patience, std::string algorithm)
    : problem_(problem), budget_(budget), use_patience_(use_patience), start_(std::chrono::steady_clock::now()) {
  budget_.validate();
  if (problem_.dimension == 0) throw ConfigError("problem dimension must be positive");
  if (!problem_.objective) throw ConfigError("problem has no objective");
  result_.algorithm = std::move(algorithm);
  result_.best_objective = std::numeric_limits<double>::infinity();
}

double Tracker::evaluate(std::vector<double> point) {
  if (point.size() != problem_.dimension) throw ShapeError("candidate has the wrong dimension");
  for (auto& x : point) x = std::isnan(x) ? 0.5 : std::clamp(x, 0.0, 1.0);
  double value;
  try {
    value = problem_.objective(point);
  } catch (const std::exception& e) {
    value = std::numeric_limits<double>::infinity();
    note("trial " + std::to_string(evaluations() + 1) + " failed: " + e.what());
  }
  if (std::isnan(value)) value = std::numeric_limits<double>::infinity();
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  result_.history.push_back({evaluations() + 1, std::move(point), value, elapsed});
  objectives_.push_back(value);
  if (result_.history.size() == 1 || value < result_.best_objective) {
    result_.best_objective = value;
    result_.best_position = result_.history.size() - 1;
  }
  return value;
}

bool Tracker::done() const {
  if (evaluations() >= budget_.max_trials) return true;
  return use_patience_ && early_stop_check(objectives_, budget_.patience);
}

std::vector<double> Tracker::sample(std::mt19937_64& rng) const {
  if (problem_.sampler) return problem_.sampler(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> u(problem_.dimension);
  for (auto& x : u) x = unit(rng);
  return u;
}

UnitResult Tracker::finish() {
  result_.stopped_early = evaluations() < budget_.max_trials;
  result_.runtime_seconds = std::max(std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(),
                                     std::numeric_limits<double>::min());
  return std::move(result_);
}

}  // namespace detail

UnitResult random_search(const UnitProblem& problem, const BudgetPolicy& budget, std::uint64_t seed) {
  detail::Tracker tracker(problem, budget, /*use_patience=*/false, "random");
  std::mt19937_64 rng(seed);
  while (!tracker.done()) tracker.evaluate(tracker.sample(rng));
  return tracker.finish();
}

Algorithm ngopt_select(std::size_t dimension, int budget) {
  if (budget < 2 * static_cast<int>(dimension)) return Algorithm::Random;
  if (dimension <= 10 && budget <= 100) return Algorithm::Cmaes;
  return Algorithm::Pso;
}

std::string ngopt_rule(std::size_t dimension, int budget) {
  const std::string dims = "dimension=" + std::to_string(dimension) + " budget=" + std::to_string(budget);
  switch (ngopt_select(dimension, budget)) {
    case Algorithm::Random: return dims + ": budget < 2*dimension -> random";
    case Algorithm::Cmaes: return dims + ": dimension <= 10 and budget <= 100 -> cmaes";
    default: return dims + ": otherwise -> pso";
  }
}

UnitResult ngopt(const UnitProblem& problem, const BudgetPolicy& budget, std::uint64_t seed) {
  const Algorithm delegate = ngopt_select(problem.dimension, budget.max_trials);
  UnitResult r = run(delegate, problem, budget, seed);
  r.algorithm = "ngopt→" + std::string(name(delegate));
  r.notes.insert(r.notes.begin(), "selection " + ngopt_rule(problem.dimension, budget.max_trials));
  return r;
}

UnitResult run(Algorithm a, const UnitProblem& problem, const BudgetPolicy& budget, std::uint64_t seed) {
  switch (a) {
    case Algorithm::Random: return random_search(problem, budget, seed);
    case Algorithm::Cmaes: return cmaes(problem, budget, seed);
    case Algorithm::Bayes: return bayesian(problem, budget, seed);
    case Algorithm::Pso: return pso(problem, budget, seed);
    case Algorithm::Ngopt: return ngopt(problem, budget, seed);
  }
  throw ConfigError("unknown algorithm");
}

UnitProblem make_grid_problem(const HpObjective& objective, const search::SearchSpace& space) {
  space.validate();
  UnitProblem p;
  p.dimension = search::kDimensions;
  p.objective = [objective, space](std::span<const double> u) { return objective(search::decode(u, space)); };
  p.sampler = [space](std::mt19937_64& rng) { return search::encode(search::sample_uniform(space, rng), space); };
  return p;
}

namespace {

OptimizationResult lift(UnitResult r, const search::SearchSpace& space) {
  OptimizationResult out;
  out.algorithm = std::move(r.algorithm);
  out.best_objective = r.best_objective;
  out.runtime_seconds = r.runtime_seconds;
  out.stopped_early = r.stopped_early;
  out.notes = std::move(r.notes);
  out.history.reserve(r.history.size());
  for (const auto& t : r.history) out.history.push_back({t.index, search::decode(t.point, space), t.objective, t.elapsed});
  if (!out.history.empty()) out.best_params = out.history[r.best_position].params;
  return out;
}

}  // namespace

OptimizationResult run(Algorithm a, const HpObjective& objective, const search::SearchSpace& space,
                       const BudgetPolicy& budget, std::uint64_t seed) {
  const UnitProblem problem = make_grid_problem(objective, space);
  return lift(run(a, problem, budget, seed), space);
}

OptimizationResult run_random_search(const HpObjective& objective, const search::SearchSpace& space,
                                     const BudgetPolicy& budget, std::uint64_t seed) {
  return run(Algorithm::Random, objective, space, budget, seed);
}
OptimizationResult run_cmaes(const HpObjective& objective, const search::SearchSpace& space,
                             const BudgetPolicy& budget, std::uint64_t seed) {
  return run(Algorithm::Cmaes, objective, space, budget, seed);
}
OptimizationResult run_bayesian(const HpObjective& objective, const search::SearchSpace& space,
                                const BudgetPolicy& budget, std::uint64_t seed) {
  return run(Algorithm::Bayes, objective, space, budget, seed);
}
OptimizationResult run_pso(const HpObjective& objective, const search::SearchSpace& space, const BudgetPolicy& budget,
                           std::uint64_t seed) {
  return run(Algorithm::Pso, objective, space, budget, seed);
}
OptimizationResult run_ngopt(const HpObjective& objective, const search::SearchSpace& space,
                             const BudgetPolicy& budget, std::uint64_t seed) {
  return run(Algorithm::Ngopt, objective, space, budget, seed);
}

}  // namespace hpobench::opt
