#include <algorithm>
#include <limits>
#include <random>

#include "hpobench/errors.hpp"
#include "hpobench/optimizers.hpp"
#include "tracker.hpp"

namespace hpobench::opt {

void pso_move(Particle& p, std::span<const double> swarm_best, std::mt19937_64& rng, const PsoCoefficients& c) {
  const std::size_t d = p.position.size();
  if (p.velocity.size() != d || p.best_position.size() != d || swarm_best.size() != d)
    throw ShapeError("particle vectors have inconsistent dimensions");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t k = 0; k < d; ++k) {
    const double r1 = unit(rng);
    const double r2 = unit(rng);
    p.velocity[k] = c.inertia * p.velocity[k] + c.cognitive * r1 * (p.best_position[k] - p.position[k]) +
                    c.social * r2 * (swarm_best[k] - p.position[k]);
    p.position[k] = std::clamp(p.position[k] + p.velocity[k], 0.0, 1.0);
  }
}

UnitResult pso(const UnitProblem& problem, const BudgetPolicy& budget, std::uint64_t seed) {
  detail::Tracker tracker(problem, budget, /*use_patience=*/true, "pso");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t d = problem.dimension;

  std::vector<Particle> swarm(kSwarmSize);
  for (auto& p : swarm) {
    p.position.resize(d);
    p.velocity.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
      p.position[k] = unit(rng);
      p.velocity[k] = unit(rng) - p.position[k];
    }
    p.best_position = p.position;
    p.best_value = std::numeric_limits<double>::infinity();
  }

  std::vector<double> gbest = swarm.front().position;
  double gbest_value = std::numeric_limits<double>::infinity();

  auto evaluate = [&](Particle& p) {
    const double v = tracker.evaluate(p.position);
    if (v < p.best_value) {
      p.best_value = v;
      p.best_position = p.position;
    }
    if (v < gbest_value) {
      gbest_value = v;
      gbest = p.position;
    }
  };

  for (auto& p : swarm) {
    if (tracker.done()) break;
    evaluate(p);
  }
  while (!tracker.done()) {
    for (auto& p : swarm) {
      if (tracker.done()) break;
      pso_move(p, gbest, rng);
      evaluate(p);
    }
  }
  return tracker.finish();
}

}  // namespace hpobench::opt
