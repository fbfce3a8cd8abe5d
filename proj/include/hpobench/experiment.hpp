#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hpobench/data_ingest.hpp"
#include "hpobench/metrics.hpp"
#include "hpobench/objective.hpp"
#include "hpobench/optimizers.hpp"
#include "hpobench/results_io.hpp"
#include "hpobench/search_space.hpp"
#include "hpobench/stats.hpp"

namespace hpobench::experiment {

inline constexpr int kSchemaVersion = 1;

struct ExperimentConfig {
  std::optional<std::filesystem::path> data_path;
  bool synthetic = false;
  /// Rows generated in synthetic mode; 0 means the largest sample size.
  std::size_t synthetic_rows = 0;
  std::uint64_t seed = 42;
  std::vector<std::size_t> sizes = default_sizes();
  std::vector<metrics::Variate> variates = {metrics::Variate::Univariate, metrics::Variate::Multivariate};
  std::vector<opt::Algorithm> algorithms = {std::begin(opt::kAllAlgorithms), std::end(opt::kAllAlgorithms)};
  std::size_t lag = 24;
  /// Exogenous columns kept in multivariate mode; empty keeps all.
  std::vector<std::string> features;
  opt::BudgetPolicy budget;
  double test_fraction = 0.2;
  double holdout_fraction = 0.2;
  int repeats = 1;
  std::filesystem::path out_dir = "results";
  /// Upper bound on concurrent cells; 0 means hardware concurrency. HPOBENCH_WORKERS caps it further.
  std::size_t workers = 0;
  search::SearchSpace space = search::SearchSpace::standard();

  static std::vector<std::size_t> default_sizes();
  /// Throws ConfigError on any violated invariant.
  void validate() const;
};

/// Parses `key = value` lines; `#` starts a comment. Unknown keys are errors.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string to_config_text(const ExperimentConfig& cfg);

std::vector<std::size_t> parse_size_list(std::string_view text);
std::vector<opt::Algorithm> parse_algorithm_list(std::string_view text);
std::vector<metrics::Variate> parse_variate_list(std::string_view text);

/// Scaled source frame shared by every cell.
struct PreparedSource {
  data::TimeSeriesFrame frame;
  data::ScalingParams scaling;
};

PreparedSource prepare_source(const ExperimentConfig& cfg);

struct CellSpec {
  opt::Algorithm algorithm = opt::Algorithm::Random;
  metrics::Variate variate = metrics::Variate::Univariate;
  std::size_t sample_size = 0;
  int repeat = 0;
  std::uint64_t seed = 0;
};

std::uint64_t cell_seed(std::uint64_t master, opt::Algorithm a, metrics::Variate v, std::size_t size, int repeat);
/// Cells in config order: variates, then sizes, then algorithms, then repeats.
std::vector<CellSpec> plan_cells(const ExperimentConfig& cfg);

objective::Mode objective_mode_for(opt::Algorithm a);

struct CellResult {
  io::ResultRow row;
  opt::OptimizationResult optimization;
  long objective_fits = 0;
  std::string error;
};

CellResult run_cell(const PreparedSource& source, const ExperimentConfig& cfg, const CellSpec& cell,
                    std::size_t run_id);

struct RunLedger {
  ExperimentConfig config;
  std::vector<CellResult> cells;

  bool all_ok() const;
  std::vector<io::ResultRow> rows() const;
  std::vector<metrics::MetricRecord> records() const;
};

/// Number of concurrent cells after applying HPOBENCH_WORKERS.
std::size_t effective_workers(const ExperimentConfig& cfg);

using ProgressFn = std::function<void(const CellResult&, std::size_t done, std::size_t total)>;

RunLedger run_experiment(const ExperimentConfig& cfg, const ProgressFn& progress = {});
RunLedger run_experiment(const ExperimentConfig& cfg, const PreparedSource& source, const ProgressFn& progress = {});

// --- Reports --------------------------------------------------------------

enum class Metric { Mape, R2, Runtime };
inline constexpr Metric kAllMetrics[] = {Metric::Mape, Metric::R2, Metric::Runtime};
std::string_view name(Metric m);
double metric_value(const io::ResultRow& row, Metric m);

struct SummaryRow {
  Metric metric;
  metrics::Variate variate;
  std::string algorithm;
  std::size_t n = 0;
  double min = 0.0, max = 0.0, mean = 0.0, sd = 0.0;
};

/// Per metric, variate, and algorithm: min, max, mean, and sample sd over successful rows.
std::vector<SummaryRow> summarize(const std::vector<io::ResultRow>& rows);
std::string format_summary_csv(const std::vector<SummaryRow>& summary);

struct StatsBlock {
  Metric metric;
  metrics::Variate variate;
  std::vector<std::string> algorithms;
  std::optional<stats::KruskalWallisReport> kruskal;
  std::optional<stats::PairwiseMatrix> pairwise;
  std::string error;
};

std::vector<StatsBlock> run_stats(const std::vector<io::ResultRow>& rows, double alpha = 0.05);
std::string format_stats_report(const std::vector<StatsBlock>& blocks);

/// Six-panel plot set; returns the written paths.
std::vector<std::filesystem::path> emit_plots(const std::vector<io::ResultRow>& rows,
                                              const std::filesystem::path& out_dir);

/// Writes results.csv, trials.csv, summary.csv, stats.txt, config.txt, and plots.
void write_outputs(const RunLedger& ledger, const std::filesystem::path& out_dir);

}  // namespace hpobench::experiment
