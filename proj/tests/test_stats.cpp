#include <doctest.h>

#include <cmath>
#include <random>

#include "hpobench/errors.hpp"
#include "hpobench/stats.hpp"
#include "stats_oracle.hpp"

using namespace hpobench;
using namespace hpobench::stats;

TEST_CASE("rank_with_ties") {
  CHECK(rank_with_ties(std::vector<double>{10, 20, 30}) == std::vector<double>{1, 2, 3});
  CHECK(rank_with_ties(std::vector<double>{5, 5}) == std::vector<double>{1.5, 1.5});
  CHECK(rank_with_ties(std::vector<double>{3, 1, 3, 2}) == std::vector<double>{3.5, 1, 3.5, 2});
  CHECK_THROWS_AS(rank_with_ties(std::vector<double>{}), StatsInputError);
}

TEST_CASE("kruskal-wallis hand fixture") {
  const Groups g{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  const auto r = kruskal_wallis(g);
  CHECK(r.H == doctest::Approx(7.2).epsilon(1e-12));
  CHECK(r.df == 2);
  CHECK(r.p_value == doctest::Approx(std::exp(-3.6)).epsilon(1e-12));
  CHECK(std::abs(r.p_value - 0.0273) < 1e-3);
  CHECK(r.mean_ranks == std::vector<double>{2, 5, 8});
  CHECK(r.tie_correction == 1.0);
}

TEST_CASE("degenerate inputs") {
  const auto same = kruskal_wallis({{1, 2, 3}, {1, 2, 3}});
  CHECK(same.H == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(same.p_value == doctest::Approx(1.0));
  const auto tied = kruskal_wallis({{4, 4}, {4, 4, 4}});
  CHECK(tied.H == 0.0);
  CHECK(tied.p_value == 1.0);
  const auto pw = dunn_bonferroni({{4, 4}, {4, 4, 4}});
  CHECK(pw.cells[0].difference == 0.0);
  CHECK(pw.cells[0].p_adjusted == 1.0);
  CHECK_THROWS_AS(kruskal_wallis({{1, 2}}), StatsInputError);
  CHECK_THROWS_AS(kruskal_wallis({{1, 2}, {}}), StatsInputError);
  CHECK_THROWS_AS(dunn_bonferroni({{1, 2}, {}}), StatsInputError);
}

TEST_CASE("dunn hand fixture") {
  const auto pw = dunn_bonferroni({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}, 0.05);
  CHECK(pw.multiplier == 3);
  CHECK(pw.cells.size() == 3);
  const auto c = pw.at(0, 2);
  CHECK(c.difference == -6.0);
  CHECK(c.z == doctest::Approx(-6.0 / std::sqrt(5.0)).epsilon(1e-12));
  CHECK(std::abs(c.z + 2.683) < 1e-3);
  CHECK(std::abs(c.p_raw - 0.0073) < 1e-3);
  CHECK(std::abs(c.p_adjusted - 0.0219) < 1e-3);
  CHECK(c.significant);
  const auto rev = pw.at(2, 0);
  CHECK(rev.difference == 6.0);
  CHECK(rev.z == -c.z);
  CHECK_FALSE(pw.at(0, 1).significant);
  const auto same = dunn_bonferroni({{1, 2, 3}, {1, 2, 3}});
  CHECK(same.cells[0].difference == 0.0);
  CHECK(same.cells[0].p_adjusted == 1.0);
}

TEST_CASE("five groups give ten comparisons with multiplier ten") {
  Groups g(5);
  for (std::size_t i = 0; i < 5; ++i)
    for (int j = 0; j < 4; ++j) g[i].push_back(static_cast<double>(i * 10 + static_cast<std::size_t>(j)));
  const auto pw = dunn_bonferroni(g);
  CHECK(pw.cells.size() == 10);
  CHECK(pw.multiplier == 10);
  for (const auto& c : pw.cells) {
    CHECK(c.p_adjusted >= c.p_raw);
    CHECK(c.p_adjusted <= 1.0);
  }
}

TEST_CASE("rank-sum conservation and monotone invariance on random inputs") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = std::uniform_int_distribution<int>(2, 5)(rng);
    Groups g(static_cast<std::size_t>(k));
    double n = 0;
    for (auto& grp : g) {
      const int size = std::uniform_int_distribution<int>(3, 20)(rng);
      for (int i = 0; i < size; ++i) grp.push_back(std::uniform_int_distribution<int>(0, 15)(rng));
      n += size;
    }
    const auto r = kruskal_wallis(g);
    double s = 0;
    for (std::size_t i = 0; i < g.size(); ++i) s += static_cast<double>(g[i].size()) * r.mean_ranks[i];
    CHECK(s == doctest::Approx(n * (n + 1) / 2).epsilon(1e-12));
    CHECK(r.H >= 0.0);
    CHECK(r.p_value >= 0.0);
    CHECK(r.p_value <= 1.0);

    Groups t = g;
    for (auto& grp : t)
      for (auto& v : grp) v = std::exp(v / 3.0) + 7.0;
    const auto rt = kruskal_wallis(t);
    CHECK(rt.H == doctest::Approx(r.H).epsilon(1e-12));
    CHECK(rt.mean_ranks == r.mean_ranks);
    const auto a = dunn_bonferroni(g), b = dunn_bonferroni(t);
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
      CHECK(a.cells[i].difference == b.cells[i].difference);
      CHECK(a.cells[i].p_adjusted == doctest::Approx(b.cells[i].p_adjusted).epsilon(1e-12));
    }
  }
}

TEST_CASE("agreement with the frozen reference fixture within 1e-9") {
  const auto r = oracle::check_stats_oracle(std::string(HPOBENCH_TEST_DATA) + "/stats_oracle.json");
  INFO("worst: " << r.worst);
  CHECK(r.instances == 100);
  CHECK(r.max_error <= 1e-9);
}
