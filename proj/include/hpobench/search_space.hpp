#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hpobench/gbt.hpp"

namespace hpobench::search {

inline constexpr std::size_t kDimensions = 6;

/// Parameter order shared by grids, unit points, and CSV columns.
inline constexpr std::array<const char*, kDimensions> kParamNames = {
    "max_depth", "learning_rate", "n_estimators", "subsample", "colsample_bytree", "min_child_weight"};

/// One strictly increasing value grid per tuned hyperparameter.
struct SearchSpace {
  std::array<std::vector<double>, kDimensions> grids;

  /// The XGBoost grids used throughout the benchmark.
  static SearchSpace standard();

  const std::vector<double>& grid(std::size_t dim) const { return grids.at(dim); }
  /// Throws ConfigError unless every grid is nonempty and strictly increasing.
  void validate() const;
  std::size_t combinations() const;

  friend bool operator==(const SearchSpace&, const SearchSpace&) = default;
};

using UnitPoint = std::vector<double>;

/// Grid index for a unit coordinate: round(u * (m - 1)), halves away from zero.
std::size_t grid_index(double u, std::size_t grid_size);

gbt::HyperParams decode(std::span<const double> u, const SearchSpace& space);
/// Canonical unit point index / (m - 1) of a configuration; throws if a value is off-grid.
UnitPoint encode(const gbt::HyperParams& hp, const SearchSpace& space);

bool on_grid(const gbt::HyperParams& hp, const SearchSpace& space);

gbt::HyperParams sample_uniform(const SearchSpace& space, std::mt19937_64& rng);
gbt::HyperParams sample_uniform(const SearchSpace& space, std::uint64_t rng_seed);

/// Values in grid order, for serialization.
std::array<double, kDimensions> to_array(const gbt::HyperParams& hp);
gbt::HyperParams from_array(const std::array<double, kDimensions>& values);

}  // namespace hpobench::search
