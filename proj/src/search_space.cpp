#include "hpobench/search_space.hpp"

#include <algorithm>
#include <cmath>

#include "hpobench/errors.hpp"

namespace hpobench::search {

SearchSpace SearchSpace::standard() {
  SearchSpace s;
  s.grids[0] = {3, 4, 5, 6, 7, 8, 9, 10};
  s.grids[1] = {0.001, 0.003, 0.005, 0.007, 0.009, 0.01, 0.03, 0.05, 0.07, 0.09, 0.1, 0.3, 0.5, 0.7, 0.9};
  s.grids[2] = {100, 200, 300, 400, 500, 600, 700, 800, 900, 1000};
  s.grids[3] = {0.5, 0.7, 0.8, 1.0};
  s.grids[4] = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  s.grids[5] = {1, 3, 5, 7};
  return s;
}

void SearchSpace::validate() const {
  for (std::size_t d = 0; d < kDimensions; ++d) {
    const auto& g = grids[d];
    if (g.empty()) throw ConfigError(std::string("empty grid for ") + kParamNames[d]);
    for (std::size_t i = 1; i < g.size(); ++i)
      if (!(g[i] > g[i - 1])) throw ConfigError(std::string("grid for ") + kParamNames[d] + " is not strictly increasing");
  }
}

std::size_t SearchSpace::combinations() const {
  std::size_t c = 1;
  for (const auto& g : grids) c *= g.size();
  return c;
}

std::size_t grid_index(double u, std::size_t grid_size) {
  if (grid_size <= 1) return 0;
  const double clamped = std::isnan(u) ? 0.0 : std::clamp(u, 0.0, 1.0);
  const auto idx = static_cast<std::size_t>(std::round(clamped * static_cast<double>(grid_size - 1)));
  return std::min(idx, grid_size - 1);
}

std::array<double, kDimensions> to_array(const gbt::HyperParams& hp) {
  return {static_cast<double>(hp.max_depth), hp.learning_rate,   static_cast<double>(hp.n_estimators),
          hp.subsample,                      hp.colsample_bytree, hp.min_child_weight};
}

gbt::HyperParams from_array(const std::array<double, kDimensions>& v) {
  gbt::HyperParams hp;
  hp.max_depth = static_cast<int>(std::lround(v[0]));
  hp.learning_rate = v[1];
  hp.n_estimators = static_cast<int>(std::lround(v[2]));
  hp.subsample = v[3];
  hp.colsample_bytree = v[4];
  hp.min_child_weight = v[5];
  return hp;
}

gbt::HyperParams decode(std::span<const double> u, const SearchSpace& space) {
  if (u.size() != kDimensions) throw ShapeError("unit point must have " + std::to_string(kDimensions) + " components");
  std::array<double, kDimensions> values{};
  for (std::size_t d = 0; d < kDimensions; ++d) {
    const auto& g = space.grids[d];
    values[d] = g[grid_index(u[d], g.size())];
  }
  return from_array(values);
}

UnitPoint encode(const gbt::HyperParams& hp, const SearchSpace& space) {
  const auto values = to_array(hp);
  UnitPoint u(kDimensions, 0.0);
  for (std::size_t d = 0; d < kDimensions; ++d) {
    const auto& g = space.grids[d];
    auto it = std::find(g.begin(), g.end(), values[d]);
    if (it == g.end()) throw ConfigError(std::string("value not on the ") + kParamNames[d] + " grid");
    const auto idx = static_cast<std::size_t>(it - g.begin());
    u[d] = g.size() > 1 ? static_cast<double>(idx) / static_cast<double>(g.size() - 1) : 0.0;
  }
  return u;
}

bool on_grid(const gbt::HyperParams& hp, const SearchSpace& space) {
  const auto values = to_array(hp);
  for (std::size_t d = 0; d < kDimensions; ++d) {
    const auto& g = space.grids[d];
    if (std::find(g.begin(), g.end(), values[d]) == g.end()) return false;
  }
  return true;
}

gbt::HyperParams sample_uniform(const SearchSpace& space, std::mt19937_64& rng) {
  std::array<double, kDimensions> values{};
  for (std::size_t d = 0; d < kDimensions; ++d) {
    const auto& g = space.grids[d];
    std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
    values[d] = g[pick(rng)];
  }
  return from_array(values);
}

gbt::HyperParams sample_uniform(const SearchSpace& space, std::uint64_t rng_seed) {
  std::mt19937_64 rng(rng_seed);
  return sample_uniform(space, rng);
}

}  // namespace hpobench::search
