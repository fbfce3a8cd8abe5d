#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hpobench::data {

using Timestamp = std::chrono::sys_seconds;

struct ColumnRange {
  double min = 0.0;
  double max = 0.0;

  bool constant() const noexcept { return max == min; }
  double scale(double x) const noexcept { return constant() ? 0.0 : (x - min) / (max - min); }
  double unscale(double s) const noexcept { return constant() ? min : min + s * (max - min); }

  friend bool operator==(const ColumnRange&, const ColumnRange&) = default;
};

/// Min/max of every numeric column captured when a frame was scaled.
struct ScalingParams {
  ColumnRange target;
  std::vector<ColumnRange> features;

  double inverse_target(double scaled) const noexcept { return target.unscale(scaled); }
  std::vector<double> inverse_target(const std::vector<double>& scaled) const;

  friend bool operator==(const ScalingParams&, const ScalingParams&) = default;
};

/// Hourly demand series with its exogenous columns, stored column-wise.
struct TimeSeriesFrame {
  std::vector<Timestamp> timestamps;
  std::vector<double> target;
  std::string target_name = "nat_demand";
  std::vector<std::vector<double>> features;  // one vector per column
  std::vector<std::string> feature_names;
  std::optional<ScalingParams> scaling;

  std::size_t size() const noexcept { return timestamps.size(); }
  bool empty() const noexcept { return timestamps.empty(); }
  std::size_t feature_count() const noexcept { return features.size(); }

  /// Throws ShapeError when column lengths disagree.
  void validate() const;

  friend bool operator==(const TimeSeriesFrame&, const TimeSeriesFrame&) = default;
};

struct ColumnStats {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double sd = 0.0;
};

struct DescriptiveStats {
  std::vector<ColumnStats> columns;  // target first, then features

  const ColumnStats* find(const std::string& name) const;
};

struct CsvSchema {
  std::string datetime_column = "datetime";
  std::string target_column = "nat_demand";
  /// Explicit exogenous columns. Empty selects every header column that
  /// matches the station patterns (T2M_*, QV2M_*, W2M_*, TQL_*) plus the
  /// `holiday` and `school` flags, in file order.
  std::vector<std::string> feature_columns;
};

/// True for column names the default schema treats as exogenous features.
bool is_default_feature_column(const std::string& name);

/// Parses `YYYY-MM-DD[ T]HH:MM[:SS]` or `DD-MM-YYYY HH:MM[:SS]`.
std::optional<Timestamp> parse_datetime(std::string_view text);
std::string format_datetime(Timestamp t);

TimeSeriesFrame load_csv(const std::filesystem::path& path, const CsvSchema& schema = {});
TimeSeriesFrame dedup_by_index(const TimeSeriesFrame& frame);

struct ScaledFrame {
  TimeSeriesFrame frame;
  ScalingParams params;
};
ScaledFrame fit_apply_minmax(const TimeSeriesFrame& frame);

DescriptiveStats describe(const TimeSeriesFrame& frame);
TimeSeriesFrame take_sample(const TimeSeriesFrame& frame, std::size_t size);

/// Deterministic stand-in for the Panama file: daily and weekly load cycles,
/// a cooling load on the previous hour's mean temperature, holiday/school
/// effects, and AR noise. Emits the full three-station Panama column set.
TimeSeriesFrame synth_demand(std::size_t n, std::uint64_t seed);

/// Keeps only the named exogenous columns (in the given order).
TimeSeriesFrame select_features(const TimeSeriesFrame& frame, const std::vector<std::string>& names);

}  // namespace hpobench::data
