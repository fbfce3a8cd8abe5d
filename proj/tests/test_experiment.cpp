#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "hpobench/errors.hpp"
#include "hpobench/experiment.hpp"
#include "hpobench/svg_plot.hpp"

using namespace hpobench;
using namespace hpobench::experiment;
using metrics::Variate;
using opt::Algorithm;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.synthetic = true;
  cfg.seed = 7;
  cfg.sizes = {60, 80};
  cfg.variates = {Variate::Univariate};
  cfg.algorithms = {Algorithm::Random, Algorithm::Pso};
  cfg.lag = 4;
  cfg.budget = {6, 6};
  cfg.space.grids[2] = {10, 20};
  cfg.workers = 1;
  return cfg;
}

io::ResultRow row(std::string algo, Variate v, std::size_t size, double mape, double r2, double runtime) {
  io::ResultRow r;
  r.algorithm = std::move(algo);
  r.variate = v;
  r.sample_size = size;
  r.mape = mape;
  r.r2 = r2;
  r.runtime_s = runtime;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse_config(
      "schema_version = 1\n"
      "# comment\n"
      "synthetic = true\n"
      "seed = 9\n"
      "sizes = 1000:3000:1000, 5000\n"
      "variates = multivariate\n"
      "algorithms = pso, random\n"
      "lag = 6\n"
      "features = T2M_toc, holiday\n"
      "max_trials = 40\n"
      "patience = 10\n"
      "grid.max_depth = 3,4,5\n");
  CHECK(cfg.synthetic);
  CHECK(cfg.seed == 9);
  CHECK(cfg.sizes == std::vector<std::size_t>{1000, 2000, 3000, 5000});
  CHECK(cfg.variates == std::vector<Variate>{Variate::Multivariate});
  CHECK(cfg.algorithms == std::vector<Algorithm>{Algorithm::Pso, Algorithm::Random});
  CHECK(cfg.lag == 6);
  CHECK(cfg.features == std::vector<std::string>{"T2M_toc", "holiday"});
  CHECK(cfg.budget.max_trials == 40);
  CHECK(cfg.budget.patience == 10);
  CHECK(cfg.space.grid(0) == std::vector<double>{3, 4, 5});
  CHECK_NOTHROW(cfg.validate());

  const auto again = parse_config(to_config_text(cfg));
  CHECK(to_config_text(again) == to_config_text(cfg));
  CHECK(again.space == cfg.space);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("synthetic = true\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("schema_version = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("schema_version = 1\ncolour = red\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("schema_version = 1\nalgorithms = tpe\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("schema_version = 1\nseed = x\n"), ConfigError);
  auto cfg = tiny_config();
  cfg.sizes = {80, 60};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = tiny_config();
  cfg.sizes = {20};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = tiny_config();
  cfg.synthetic = false;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK(ExperimentConfig::default_sizes().size() == 20);
  CHECK(ExperimentConfig::default_sizes().back() == 20000);
}

TEST_CASE("cell plan order, count, and seeds") {
  auto cfg = tiny_config();
  cfg.variates = {Variate::Univariate, Variate::Multivariate};
  cfg.repeats = 2;
  const auto cells = plan_cells(cfg);
  CHECK(cells.size() == 2 * 2 * 2 * 2);
  CHECK(cells[0].variate == Variate::Univariate);
  CHECK(cells[0].sample_size == 60);
  CHECK(cells[0].algorithm == Algorithm::Random);
  CHECK(cells[1].repeat == 1);
  CHECK(cells[2].algorithm == Algorithm::Pso);
  CHECK(cells[4].sample_size == 80);
  CHECK(cells[8].variate == Variate::Multivariate);
  std::set<std::uint64_t> seeds;
  for (const auto& c : cells) seeds.insert(c.seed);
  CHECK(seeds.size() == cells.size());
  CHECK(cell_seed(1, Algorithm::Pso, Variate::Univariate, 1000, 0) ==
        cell_seed(1, Algorithm::Pso, Variate::Univariate, 1000, 0));
  CHECK(cell_seed(1, Algorithm::Pso, Variate::Univariate, 1000, 0) !=
        cell_seed(2, Algorithm::Pso, Variate::Univariate, 1000, 0));
  CHECK(objective_mode_for(Algorithm::Random) == objective::Mode::Cv5);
  CHECK(objective_mode_for(Algorithm::Bayes) == objective::Mode::Holdout);
}

TEST_CASE("tiny experiment: cardinality, determinism, and cell replay") {
  const auto cfg = tiny_config();
  const auto a = run_experiment(cfg);
  const auto b = run_experiment(cfg);
  REQUIRE(a.cells.size() == 4);
  CHECK(a.all_ok());
  CHECK(a.records().size() == 4);
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    const auto& x = a.cells[i].row;
    const auto& y = b.cells[i].row;
    CHECK(x.run_id == i + 1);
    CHECK(x.seed == y.seed);
    CHECK(x.mape == y.mape);
    CHECK(x.r2 == y.r2);
    CHECK(x.best == y.best);
    CHECK(x.runtime_s > 0);
    CHECK(x.mape >= 0);
    CHECK(x.r2 <= 1);
  }
  const auto source = prepare_source(cfg);
  const auto plan = plan_cells(cfg);
  const auto replay = run_cell(source, cfg, plan[3], 4);
  CHECK(replay.row.mape == a.cells[3].row.mape);
  CHECK(replay.row.r2 == a.cells[3].row.r2);
  CHECK(replay.row.best == a.cells[3].row.best);
}

TEST_CASE("random search performs five times the fits of a holdout optimizer") {
  auto cfg = tiny_config();
  cfg.sizes = {80};
  cfg.algorithms = {Algorithm::Random, Algorithm::Pso};
  const auto ledger = run_experiment(cfg);
  CHECK(ledger.cells[0].objective_fits == 5L * cfg.budget.max_trials);
  CHECK(ledger.cells[0].optimization.history.size() == 6);
  CHECK(ledger.cells[1].objective_fits == static_cast<long>(ledger.cells[1].optimization.history.size()));
}

TEST_CASE("failed cells are recorded and the run continues") {
  auto cfg = tiny_config();
  const auto source = prepare_source(cfg);
  CellSpec bad{Algorithm::Pso, Variate::Univariate, 100000, 0, 1};
  const auto r = run_cell(source, cfg, bad, 1);
  CHECK(r.row.status == "failed");
  CHECK_FALSE(r.error.empty());
}

TEST_CASE("results CSV round trip is lossless") {
  std::vector<io::ResultRow> rows;
  auto r = row("cmaes", Variate::Multivariate, 3000, 0.1 + 0.2, 1.0 / 3.0, 12.345678901234567);
  r.run_id = 3;
  r.seed = 18446744073709551615ULL;
  r.best.learning_rate = 0.003;
  rows.push_back(r);
  auto f = row("pso", Variate::Univariate, 1000, std::nan(""), std::nan(""), std::nan(""));
  f.status = "failed";
  rows.push_back(f);
  std::stringstream s;
  io::write_results_csv(s, rows);
  CHECK(s.str().substr(0, io::kResultsHeader.size()) == io::kResultsHeader);
  const auto back = io::read_results_csv(s);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == rows[0]);
  CHECK(back[1].status == "failed");
  CHECK(std::isnan(back[1].mape));
  std::stringstream again;
  io::write_results_csv(again, back);
  CHECK(again.str() == s.str());
  std::stringstream bad("run_id,oops\n");
  CHECK_THROWS_AS(io::read_results_csv(bad), SchemaError);
  std::stringstream short_line(std::string(io::kResultsHeader) + "\n1,2,3\n");
  CHECK_THROWS_AS(io::read_results_csv(short_line), ParseError);
}

TEST_CASE("format_double is shortest round trip") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5, 0.0})
    CHECK(io::parse_double(io::format_double(v)) == v);
  CHECK(io::format_double(0.1) == "0.1");
}

TEST_CASE("summarize") {
  const auto s1 = summarize({row("random", Variate::Univariate, 1000, 0.12, 0.9, 3)});
  REQUIRE(s1.size() == 3);
  CHECK(s1[0].min == s1[0].max);
  CHECK(s1[0].mean == 0.12);
  CHECK(s1[0].sd == 0.0);
  const auto s2 = summarize({row("random", Variate::Univariate, 1000, 0.1, 0.9, 3),
                             row("random", Variate::Univariate, 2000, 0.2, 0.9, 3)});
  CHECK(s2[0].mean == doctest::Approx(0.15));
  CHECK(s2[0].sd == doctest::Approx(std::sqrt(0.005)));
  CHECK(format_summary_csv(s2).rfind("metric,variate,algorithm,n,min,max,mean,sd\n", 0) == 0);
}

TEST_CASE("run_stats") {
  std::vector<io::ResultRow> rows;
  const char* algos[] = {"random", "cmaes", "bayes", "pso", "ngopt"};
  for (std::size_t size = 1000; size <= 5000; size += 1000)
    for (std::size_t a = 0; a < 5; ++a)
      rows.push_back(row(algos[a], Variate::Univariate, size, 0.1, 0.9,
                         a == 0 ? 100.0 + static_cast<double>(size) : static_cast<double>(a * 7 + size % 3)));
  const auto blocks = run_stats(rows);
  REQUIRE(blocks.size() == 3);
  const auto& mape = blocks[0];
  CHECK(mape.metric == Metric::Mape);
  REQUIRE(mape.pairwise);
  CHECK(mape.pairwise->cells.size() == 10);
  for (const auto& c : mape.pairwise->cells) CHECK_FALSE(c.significant);
  const auto& rt = blocks[2];
  REQUIRE(rt.kruskal);
  CHECK(rt.kruskal->p_value < 0.05);
  CHECK(rt.kruskal->mean_ranks[0] == doctest::Approx(23.0));
  const auto report = format_stats_report(blocks);
  CHECK(report.find("[runtime univariate]") != std::string::npos);

  const auto lonely = run_stats({row("random", Variate::Univariate, 1000, 0.1, 0.9, 1)});
  CHECK_FALSE(lonely[0].error.empty());
}

TEST_CASE("a strictly dominating runtime group is significant against a separated group") {
  std::vector<io::ResultRow> rows;
  for (int i = 0; i < 20; ++i) {
    rows.push_back(row("random", Variate::Univariate, 1000 + static_cast<std::size_t>(i), 0.1, 0.9, 100.0 + i));
    rows.push_back(row("pso", Variate::Univariate, 1000 + static_cast<std::size_t>(i), 0.1, 0.9, 1.0 + i * 0.01));
  }
  const auto blocks = run_stats(rows);
  CHECK(blocks[2].pairwise->cells[0].significant);
  CHECK(blocks[2].pairwise->cells[0].difference > 0);
}

TEST_CASE("plot scaling") {
  plot::LineChart c;
  c.series = {{"a", {1, 2}, {3, 3}}, {"b", {1, 2}, {3, 3}}};
  plot::scale_unit(c);
  for (const auto& s : c.series)
    for (double v : s.y) CHECK(v == 0.0);
  plot::LineChart d;
  d.series = {{"a", {1, 2}, {2, 4}}, {"b", {1, 2}, {6, 3}}};
  plot::scale_unit(d);
  CHECK(d.series[1].y[0] == 1.0);
  CHECK(d.series[0].y[0] == 0.0);
  CHECK(d.series[0].y[1] == 0.5);
}

TEST_CASE("emit_plots writes six byte-stable files") {
  std::vector<io::ResultRow> rows;
  for (auto v : {Variate::Univariate, Variate::Multivariate})
    for (std::size_t size : {1000u, 2000u})
      for (const char* a : {"random", "pso"}) rows.push_back(row(a, v, size, 0.1 * static_cast<double>(size), 0.5, 2));
  const auto dir = std::filesystem::temp_directory_path() / "hpobench_plots";
  std::filesystem::remove_all(dir);
  const auto paths = emit_plots(rows, dir);
  CHECK(paths.size() == 6);
  std::set<std::string> names;
  for (const auto& p : paths) names.insert(p.filename().string());
  CHECK(names == std::set<std::string>{"mape_univariate.svg", "mape_multivariate.svg", "r2_univariate.svg",
                                       "r2_multivariate.svg", "runtime_univariate.svg", "runtime_multivariate.svg"});
  const auto first = slurp(dir / "mape_univariate.svg");
  CHECK(first.find("<svg") != std::string::npos);
  CHECK(first.find("random,1000,100,0") != std::string::npos);
  CHECK(first.find("random,2000,200,1") != std::string::npos);
  emit_plots(rows, dir);
  CHECK(slurp(dir / "mape_univariate.svg") == first);
}

TEST_CASE("write_outputs produces the full output set") {
  const auto ledger = run_experiment(tiny_config());
  const auto dir = std::filesystem::temp_directory_path() / "hpobench_outputs";
  std::filesystem::remove_all(dir);
  write_outputs(ledger, dir);
  for (const char* f : {"results.csv", "trials.csv", "summary.csv", "stats.txt", "config.txt", "mape_univariate.svg"})
    CHECK(std::filesystem::exists(dir / f));
  CHECK(io::read_results_csv(dir / "results.csv") == ledger.rows());
  const auto trials = slurp(dir / "trials.csv");
  CHECK(trials.rfind(std::string(io::kTrialsHeader) + "\n", 0) == 0);
  CHECK(parse_config(slurp(dir / "config.txt")).seed == 7);
}

TEST_CASE("HPOBENCH_WORKERS caps concurrency") {
  auto cfg = tiny_config();
  cfg.workers = 8;
  setenv("HPOBENCH_WORKERS", "2", 1);
  CHECK(effective_workers(cfg) == 2);
  setenv("HPOBENCH_WORKERS", "junk", 1);
  CHECK(effective_workers(cfg) == 8);
  unsetenv("HPOBENCH_WORKERS");
}

TEST_CASE("parallel and sequential ledgers agree") {
  auto cfg = tiny_config();
  const auto seq = run_experiment(cfg);
  cfg.workers = 3;
  const auto par = run_experiment(cfg);
  REQUIRE(seq.cells.size() == par.cells.size());
  for (std::size_t i = 0; i < seq.cells.size(); ++i) {
    CHECK(seq.cells[i].row.run_id == par.cells[i].row.run_id);
    CHECK(seq.cells[i].row.mape == par.cells[i].row.mape);
    CHECK(seq.cells[i].row.best == par.cells[i].row.best);
  }
}
