#include "hpobench/selftest.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "hpobench/data_ingest.hpp"
#include "hpobench/feature_builder.hpp"
#include "hpobench/gbt.hpp"
#include "hpobench/metrics.hpp"
#include "hpobench/objective.hpp"
#include "hpobench/optimizers.hpp"
#include "hpobench/search_space.hpp"
#include "hpobench/stats.hpp"

namespace hpobench {

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool gbt_hand_fixture() {
  Matrix X(4, 1, std::vector<double>{0, 1, 2, 3});
  const std::vector<double> y{0, 0, 10, 10};
  gbt::HyperParams hp;
  hp.max_depth = 1;
  hp.n_estimators = 1;
  hp.learning_rate = 1.0;
  const auto p = gbt::predict(gbt::fit(X, y, hp, 0), X);
  return near(p[0], 5.0 / 3, 1e-12) && near(p[1], 5.0 / 3, 1e-12) && near(p[2], 25.0 / 3, 1e-12) &&
         near(p[3], 25.0 / 3, 1e-12);
}

bool decode_examples() {
  const auto space = search::SearchSpace::standard();
  const std::vector<double> zero(6, 0.0), one(6, 1.0);
  const auto lo = search::decode(zero, space);
  const auto hi = search::decode(one, space);
  std::vector<double> half(6, 0.0);
  half[0] = 0.5;
  return lo.max_depth == 3 && lo.learning_rate == 0.001 && hi.max_depth == 10 && hi.learning_rate == 0.9 &&
         search::decode(half, space).max_depth == 7;
}

bool early_stop_examples() {
  std::vector<double> flat(25, 1.0);
  for (int i = 0; i < 4; ++i) flat[static_cast<std::size_t>(i)] = 5.0 - i;
  flat[4] = 0.5;
  const std::vector<double> falling{5, 4, 3};
  return !opt::early_stop_check(falling, 20) && opt::early_stop_check(flat, 20) &&
         !opt::early_stop_check(std::span<const double>(flat.data(), 24), 20) &&
         opt::early_stop_check(std::span<const double>(flat.data(), 1), 0);
}

bool ngopt_rules() {
  return opt::ngopt_select(6, 50) == opt::Algorithm::Cmaes && opt::ngopt_select(6, 5) == opt::Algorithm::Random &&
         opt::ngopt_select(6, 200) == opt::Algorithm::Pso && opt::ngopt_select(12, 50) == opt::Algorithm::Pso;
}

bool ei_values() {
  return near(opt::expected_improvement(0, 1, 0), 0.3989422804014327, 1e-12) &&
         opt::expected_improvement(1, 0, 1) == 0.0;
}

bool metric_identities() {
  const std::vector<double> a{1, 2, 3}, rev{3, 2, 1}, mean{2, 2, 2};
  const std::vector<double> a2{100, 200}, p2{110, 180};
  return metrics::mape(a, a) == 0.0 && metrics::r_squared(a, a) == 1.0 && metrics::r_squared(a, mean) == 0.0 &&
         near(metrics::r_squared(a, rev), -3.0, 1e-12) && near(metrics::mape(a2, p2), 0.10, 1e-12) &&
         near(metrics::rmse(std::vector<double>{1, 4}, std::vector<double>{1, 1}), std::sqrt(4.5), 1e-12) &&
         near(metrics::rmse(std::vector<double>{1, 4}, std::vector<double>{1, 2}), std::sqrt(2.0), 1e-12);
}

bool stats_fixture() {
  const stats::Groups g{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  const auto kw = stats::kruskal_wallis(g);
  const auto pw = stats::dunn_bonferroni(g, 0.05);
  const auto c = pw.at(0, 2);
  return near(kw.H, 7.2, 1e-9) && near(kw.p_value, 0.0273, 1e-3) && near(c.difference, -6.0, 1e-12) &&
         near(c.z, -2.683, 1e-3) && near(c.p_raw, 0.0073, 1e-3) && near(c.p_adjusted, 0.0219, 1e-3) && c.significant;
}

bool cv_folds() {
  return objective::cv_fold_sizes(103) == std::vector<std::size_t>{21, 21, 21, 20, 20};
}

bool lag_example() {
  data::TimeSeriesFrame f;
  for (int i = 0; i < 5; ++i) {
    f.timestamps.push_back(data::Timestamp{std::chrono::hours(i)});
    f.target.push_back(i + 1);
  }
  const auto ds = features::make_supervised(f, {2, false});
  return ds.size() == 3 && ds.X(0, 0) == 1 && ds.X(0, 1) == 2 && ds.X(2, 1) == 4 && ds.y == std::vector<double>{3, 4, 5};
}

bool synthetic_determinism() { return data::synth_demand(200, 7) == data::synth_demand(200, 7); }

}  // namespace

bool run_selftest(std::ostream& out) {
  const std::vector<std::pair<const char*, std::function<bool()>>> checks = {
      {"gbt hand fixture", gbt_hand_fixture},
      {"decode endpoints and rounding", decode_examples},
      {"early stop rule", early_stop_examples},
      {"ngopt rule table", ngopt_rules},
      {"expected improvement", ei_values},
      {"metric identities", metric_identities},
      {"kruskal-wallis and dunn fixture", stats_fixture},
      {"cv fold sizes", cv_folds},
      {"lag window construction", lag_example},
      {"synthetic generator determinism", synthetic_determinism},
  };
  bool all = true;
  for (const auto& [label, check] : checks) {
    bool ok = false;
    try {
      ok = check();
    } catch (const std::exception& e) {
      out << "error in " << label << ": " << e.what() << '\n';
    }
    out << (ok ? "PASS " : "FAIL ") << label << '\n';
    all = all && ok;
  }
  return all;
}

}  // namespace hpobench
