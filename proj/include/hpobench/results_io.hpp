#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hpobench/gbt.hpp"
#include "hpobench/metrics.hpp"
#include "hpobench/optimizers.hpp"

namespace hpobench::io {

inline constexpr std::string_view kResultsHeader =
    "run_id,algorithm,variate,sample_size,seed,mape,r2,runtime_s,best_max_depth,best_learning_rate,"
    "best_n_estimators,best_subsample,best_colsample_bytree,best_min_child_weight,status";

inline constexpr std::string_view kTrialsHeader =
    "run_id,algorithm,config,sample_size,trial,objective,elapsed_s,max_depth,learning_rate,n_estimators,subsample,"
    "colsample_bytree,min_child_weight";

/// One line of the results CSV.
struct ResultRow {
  std::size_t run_id = 0;
  std::string algorithm;
  metrics::Variate variate = metrics::Variate::Univariate;
  std::size_t sample_size = 0;
  std::uint64_t seed = 0;
  double mape = 0.0;
  double r2 = 0.0;
  double runtime_s = 0.0;
  gbt::HyperParams best;
  std::string status = "ok";

  bool ok() const noexcept { return status == "ok"; }
  metrics::MetricRecord record() const;
  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

/// Shortest text that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text);

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_results_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_results_csv(std::istream& in);
std::vector<ResultRow> read_results_csv(const std::filesystem::path& path);

struct TrialBlock {
  const ResultRow* row;
  const opt::OptimizationResult* result;
};

void write_trials_csv(std::ostream& out, const std::vector<TrialBlock>& blocks);
void write_trials_csv(const std::filesystem::path& path, const std::vector<TrialBlock>& blocks);

/// Writes `text` to `path`, throwing hpobench::Error when the file cannot be written.
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace hpobench::io
