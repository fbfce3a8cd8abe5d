#include <CLI11.hpp>
#include <iostream>

#include "hpobench/data_ingest.hpp"
#include "hpobench/errors.hpp"
#include "hpobench/experiment.hpp"
#include "hpobench/results_io.hpp"
#include "hpobench/selftest.hpp"

namespace ex = hpobench::experiment;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct RunFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> data;
  bool synthetic = false;
  std::optional<std::size_t> synthetic_rows;
  std::optional<std::string> out;
  std::optional<std::string> sizes;
  std::optional<std::string> algos;
  std::optional<std::string> variate;
  std::optional<int> repeats;
  std::optional<std::size_t> lag;
  std::optional<std::string> features;
  std::optional<int> max_trials;
  std::optional<int> patience;
  std::optional<std::size_t> workers;
};

ex::ExperimentConfig build_config(const RunFlags& f) {
  ex::ExperimentConfig cfg = f.config.empty() ? ex::ExperimentConfig{} : ex::load_config(f.config);
  if (f.seed) cfg.seed = *f.seed;
  if (f.data) {
    cfg.data_path = *f.data;
    cfg.synthetic = false;
  }
  if (f.synthetic) cfg.synthetic = true;
  if (f.synthetic_rows) cfg.synthetic_rows = *f.synthetic_rows;
  if (f.out) cfg.out_dir = *f.out;
  if (f.sizes) cfg.sizes = ex::parse_size_list(*f.sizes);
  if (f.algos) cfg.algorithms = ex::parse_algorithm_list(*f.algos);
  if (f.variate) cfg.variates = ex::parse_variate_list(*f.variate == "both" ? "univariate,multivariate" : *f.variate);
  if (f.repeats) cfg.repeats = *f.repeats;
  if (f.lag) cfg.lag = *f.lag;
  if (f.features) {
    cfg.features.clear();
    std::string item;
    for (char c : *f.features + ",") {
      if (c == ',') {
        if (!item.empty()) cfg.features.push_back(item);
        item.clear();
      } else if (c != ' ') {
        item += c;
      }
    }
  }
  if (f.max_trials) cfg.budget.max_trials = *f.max_trials;
  if (f.patience) cfg.budget.patience = *f.patience;
  if (f.workers) cfg.workers = *f.workers;
  cfg.validate();
  return cfg;
}

int cmd_run(const RunFlags& flags) {
  ex::ExperimentConfig cfg;
  try {
    cfg = build_config(flags);
  } catch (const hpobench::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  const auto ledger = ex::run_experiment(cfg, [](const ex::CellResult& c, std::size_t done, std::size_t total) {
    const auto& r = c.row;
    std::cerr << "[" << done << "/" << total << "] " << r.algorithm << " " << hpobench::metrics::name(r.variate) << " n="
              << r.sample_size << " ";
    if (r.ok())
      std::cerr << "mape=" << r.mape << " r2=" << r.r2 << " runtime=" << r.runtime_s << "s\n";
    else
      std::cerr << "FAILED: " << c.error << "\n";
  });
  ex::write_outputs(ledger, cfg.out_dir);
  std::cout << "wrote " << ledger.cells.size() << " records to " << (cfg.out_dir / "results.csv").string() << "\n";
  return ledger.all_ok() ? kOk : kFailed;
}

int cmd_stats(const std::string& results, const std::string& out) {
  const auto rows = hpobench::io::read_results_csv(results);
  const auto summary = ex::format_summary_csv(ex::summarize(rows));
  const auto report = ex::format_stats_report(ex::run_stats(rows));
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    hpobench::io::write_text(std::filesystem::path(out) / "summary.csv", summary);
    hpobench::io::write_text(std::filesystem::path(out) / "stats.txt", report);
  }
  std::cout << summary << "\n" << report;
  return kOk;
}

int cmd_plot(const std::string& results, const std::string& out) {
  const auto rows = hpobench::io::read_results_csv(results);
  for (const auto& p : ex::emit_plots(rows, out)) std::cout << p.string() << "\n";
  return kOk;
}

int cmd_describe(const std::string& data, std::size_t synthetic_rows, std::uint64_t seed) {
  namespace d = hpobench::data;
  const auto frame = d::dedup_by_index(data.empty() ? d::synth_demand(synthetic_rows, seed) : d::load_csv(data));
  std::cout << "column,min,max,mean,sd\n";
  for (const auto& c : d::describe(frame).columns)
    std::cout << c.name << ',' << hpobench::io::format_double(c.min) << ',' << hpobench::io::format_double(c.max) << ','
              << hpobench::io::format_double(c.mean) << ',' << hpobench::io::format_double(c.sd) << "\n";
  std::cout << "rows," << frame.size() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperparameter-optimization benchmark for gradient-boosted load forecasting"};
  app.require_subcommand(1);

  RunFlags rf;
  auto* run = app.add_subcommand("run", "Run the experiment grid");
  run->add_option("--config", rf.config, "Config file (key = value)")->check(CLI::ExistingFile);
  run->add_option("--seed", rf.seed, "Master seed");
  run->add_option("--data", rf.data, "Demand CSV");
  run->add_flag("--synthetic", rf.synthetic, "Use the synthetic generator");
  run->add_option("--synthetic-rows", rf.synthetic_rows, "Rows to generate in synthetic mode");
  run->add_option("--out", rf.out, "Output directory");
  run->add_option("--sizes", rf.sizes, "Sample sizes, e.g. 1000,2000 or 1000:20000:1000");
  run->add_option("--algos", rf.algos, "Algorithms: random,cmaes,bayes,pso,ngopt");
  run->add_option("--variate", rf.variate, "univariate, multivariate, or both");
  run->add_option("--repeats", rf.repeats, "Runs per cell");
  run->add_option("--lag", rf.lag, "Lag window in hours");
  run->add_option("--features", rf.features, "Exogenous columns for multivariate mode");
  run->add_option("--max-trials", rf.max_trials, "Objective evaluations per run");
  run->add_option("--patience", rf.patience, "Early-stop patience");
  run->add_option("--workers", rf.workers, "Concurrent cells");

  std::string results, out_dir;
  auto* stats = app.add_subcommand("stats", "Summary and Kruskal-Wallis/Dunn tables from a results CSV");
  stats->add_option("results", results, "results.csv")->required()->check(CLI::ExistingFile);
  stats->add_option("--out", out_dir, "Directory for summary.csv and stats.txt");

  std::string plot_results, plot_out = ".";
  auto* plot = app.add_subcommand("plot", "Regenerate the six performance plots");
  plot->add_option("results", plot_results, "results.csv")->required()->check(CLI::ExistingFile);
  plot->add_option("--out", plot_out, "Output directory");

  std::string describe_data;
  std::size_t describe_rows = 48049;
  std::uint64_t describe_seed = 42;
  auto* describe = app.add_subcommand("describe", "Descriptive statistics of a demand CSV");
  auto* describe_data_opt = describe->add_option("--data", describe_data, "Demand CSV")->check(CLI::ExistingFile);
  auto* describe_synth = describe->add_option("--synthetic", describe_rows, "Describe N synthetic rows instead");
  describe->add_option("--seed", describe_seed, "Synthetic seed");
  describe_data_opt->excludes(describe_synth);

  auto* selftest = app.add_subcommand("selftest", "Run the built-in invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kUsage;
  }

  try {
    if (*run) return cmd_run(rf);
    if (*stats) return cmd_stats(results, out_dir);
    if (*plot) return cmd_plot(plot_results, plot_out);
    if (*describe) {
      if (describe_data.empty() && describe_synth->count() == 0) {
        std::cerr << "describe needs --data or --synthetic\n";
        return kUsage;
      }
      return cmd_describe(describe_data, describe_rows, describe_seed);
    }
    if (*selftest) return hpobench::run_selftest(std::cout) ? kOk : kFailed;
  } catch (const hpobench::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
