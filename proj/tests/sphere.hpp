#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "hpobench/optimizers.hpp"

namespace oracle {

/// Continuous 5-D sphere on the unit cube with its minimum away from the centre.
inline hpobench::opt::UnitProblem sphere5() {
  hpobench::opt::UnitProblem p;
  p.dimension = 5;
  p.objective = [](std::span<const double> x) {
    static constexpr double c[] = {0.21, 0.34, 0.62, 0.77, 0.45};
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - c[i]) * (x[i] - c[i]);
    return s;
  };
  return p;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace oracle
