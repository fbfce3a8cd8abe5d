#include "hpobench/data_ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "hpobench/errors.hpp"

namespace hpobench::data {

namespace {

using std::chrono::days;
using std::chrono::hours;
using std::chrono::minutes;
using std::chrono::seconds;

// Howard Hinnant's days_from_civil.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp < 10 ? mp + 3 : mp - 9;
  y = static_cast<int>(static_cast<std::int64_t>(yoe) + era * 400 + (m <= 2));
}

bool read_uint(std::string_view s, std::size_t pos, std::size_t len, unsigned& out) {
  if (pos + len > s.size()) return false;
  const char* first = s.data() + pos;
  auto [ptr, ec] = std::from_chars(first, first + len, out);
  return ec == std::errc{} && ptr == first + len;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '"' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                           : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

bool starts_with_any(const std::string& name, std::initializer_list<const char*> prefixes) {
  return std::any_of(prefixes.begin(), prefixes.end(),
                     [&](const char* p) { return name.rfind(p, 0) == 0; });
}

TimeSeriesFrame take_rows(const TimeSeriesFrame& frame, const std::vector<std::size_t>& rows) {
  TimeSeriesFrame out;
  out.target_name = frame.target_name;
  out.feature_names = frame.feature_names;
  out.scaling = frame.scaling;
  out.timestamps.reserve(rows.size());
  out.target.reserve(rows.size());
  out.features.assign(frame.features.size(), {});
  for (auto& col : out.features) col.reserve(rows.size());
  for (auto r : rows) {
    out.timestamps.push_back(frame.timestamps[r]);
    out.target.push_back(frame.target[r]);
    for (std::size_t c = 0; c < frame.features.size(); ++c) out.features[c].push_back(frame.features[c][r]);
  }
  return out;
}

ColumnRange range_of(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {*lo, *hi};
}

ColumnStats stats_of(const std::string& name, const std::vector<double>& v) {
  ColumnStats s;
  s.name = name;
  const auto r = range_of(v);
  s.min = r.min;
  s.max = r.max;
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  s.mean = std::clamp(s.mean, s.min, s.max);
  return s;
}

}  // namespace

std::vector<double> ScalingParams::inverse_target(const std::vector<double>& scaled) const {
  std::vector<double> out(scaled.size());
  std::transform(scaled.begin(), scaled.end(), out.begin(),
                 [this](double s) { return target.unscale(s); });
  return out;
}

void TimeSeriesFrame::validate() const {
  if (target.size() != timestamps.size()) throw ShapeError("target length differs from timestamp count");
  if (features.size() != feature_names.size()) throw ShapeError("feature name count differs from column count");
  for (const auto& col : features)
    if (col.size() != timestamps.size()) throw ShapeError("feature column length differs from timestamp count");
}

const ColumnStats* DescriptiveStats::find(const std::string& name) const {
  auto it = std::find_if(columns.begin(), columns.end(), [&](const ColumnStats& c) { return c.name == name; });
  return it == columns.end() ? nullptr : &*it;
}

bool is_default_feature_column(const std::string& name) {
  return starts_with_any(name, {"T2M_", "QV2M_", "W2M_", "TQL_"}) || name == "holiday" || name == "school";
}

std::optional<Timestamp> parse_datetime(std::string_view text) {
  text = trim(text);
  unsigned y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  std::size_t time_pos = 0;
  if (text.size() >= 10 && text[4] == '-' && text[7] == '-') {
    if (!read_uint(text, 0, 4, y) || !read_uint(text, 5, 2, mo) || !read_uint(text, 8, 2, d)) return std::nullopt;
    time_pos = 10;
  } else if (text.size() >= 10 && text[2] == '-' && text[5] == '-') {
    if (!read_uint(text, 0, 2, d) || !read_uint(text, 3, 2, mo) || !read_uint(text, 6, 4, y)) return std::nullopt;
    time_pos = 10;
  } else {
    return std::nullopt;
  }
  if (text.size() > time_pos) {
    if (text[time_pos] != ' ' && text[time_pos] != 'T') return std::nullopt;
    const std::size_t t = time_pos + 1;
    if (!read_uint(text, t, 2, h) || text.size() < t + 5 || text[t + 2] != ':' || !read_uint(text, t + 3, 2, mi))
      return std::nullopt;
    if (text.size() > t + 5) {
      if (text[t + 5] != ':' || !read_uint(text, t + 6, 2, s)) return std::nullopt;
      if (text.size() != t + 8) return std::nullopt;
    }
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60) return std::nullopt;
  const auto day_count = days_from_civil(y, mo, d);
  return Timestamp{seconds{day_count * 86400 + h * 3600 + mi * 60 + s}};
}

std::string format_datetime(Timestamp t) {
  const auto secs = t.time_since_epoch().count();
  const auto day_count = secs >= 0 ? secs / 86400 : (secs - 86399) / 86400;
  const auto rem = secs - day_count * 86400;
  int y = 0;
  unsigned m = 0, d = 0;
  civil_from_days(day_count, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u %02d:%02d:%02d", y, m, d, static_cast<int>(rem / 3600),
                static_cast<int>((rem / 60) % 60), static_cast<int>(rem % 60));
  return buf;
}

TimeSeriesFrame load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw SchemaError(path.string() + ": missing header row");
  const auto header_fields = split_commas(line);
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::string> header;
  for (std::size_t i = 0; i < header_fields.size(); ++i) {
    header.emplace_back(header_fields[i]);
    index.emplace(header.back(), i);
  }
  auto require = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw SchemaError(path.string() + ": missing required column '" + name + "'");
    return it->second;
  };
  const std::size_t dt_col = require(schema.datetime_column);
  const std::size_t y_col = require(schema.target_column);

  TimeSeriesFrame frame;
  frame.target_name = schema.target_column;
  std::vector<std::size_t> feature_cols;
  if (schema.feature_columns.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (i != dt_col && i != y_col && is_default_feature_column(header[i])) {
        feature_cols.push_back(i);
        frame.feature_names.push_back(header[i]);
      }
  } else {
    for (const auto& name : schema.feature_columns) {
      feature_cols.push_back(require(name));
      frame.feature_names.push_back(name);
    }
  }
  frame.features.assign(feature_cols.size(), {});

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != header.size())
      throw ParseError(line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                                    std::to_string(fields.size()));
    auto ts = parse_datetime(fields[dt_col]);
    if (!ts) throw ParseError(line_no, "unparsable datetime '" + std::string(fields[dt_col]) + "'");
    auto numeric = [&](std::size_t col) {
      auto v = parse_double(fields[col]);
      if (!v) throw ParseError(line_no, "unparsable number '" + std::string(fields[col]) + "' in column '" +
                                            header[col] + "'");
      return *v;
    };
    frame.timestamps.push_back(*ts);
    frame.target.push_back(numeric(y_col));
    for (std::size_t c = 0; c < feature_cols.size(); ++c) frame.features[c].push_back(numeric(feature_cols[c]));
  }
  return frame;
}

TimeSeriesFrame dedup_by_index(const TimeSeriesFrame& frame) {
  frame.validate();
  std::vector<std::size_t> keep;
  keep.reserve(frame.size());
  std::set<Timestamp> seen;
  for (std::size_t i = 0; i < frame.size(); ++i)
    if (seen.insert(frame.timestamps[i]).second) keep.push_back(i);
  std::stable_sort(keep.begin(), keep.end(),
                   [&](std::size_t a, std::size_t b) { return frame.timestamps[a] < frame.timestamps[b]; });
  return take_rows(frame, keep);
}

ScaledFrame fit_apply_minmax(const TimeSeriesFrame& frame) {
  frame.validate();
  if (frame.empty()) throw BoundsError("cannot scale an empty frame");
  ScaledFrame out{frame, {}};
  out.params.target = range_of(frame.target);
  for (auto& v : out.frame.target) v = out.params.target.scale(v);
  for (auto& col : out.frame.features) {
    const auto r = range_of(col);
    out.params.features.push_back(r);
    for (auto& v : col) v = r.scale(v);
  }
  out.frame.scaling = out.params;
  return out;
}

DescriptiveStats describe(const TimeSeriesFrame& frame) {
  frame.validate();
  if (frame.empty()) throw BoundsError("cannot describe an empty frame");
  DescriptiveStats out;
  if (frame.scaling) {
    const auto& p = *frame.scaling;
    out.columns.push_back(stats_of(frame.target_name, p.inverse_target(frame.target)));
    for (std::size_t c = 0; c < frame.features.size(); ++c) {
      std::vector<double> raw(frame.features[c].size());
      std::transform(frame.features[c].begin(), frame.features[c].end(), raw.begin(),
                     [&](double s) { return p.features[c].unscale(s); });
      out.columns.push_back(stats_of(frame.feature_names[c], raw));
    }
  } else {
    out.columns.push_back(stats_of(frame.target_name, frame.target));
    for (std::size_t c = 0; c < frame.features.size(); ++c)
      out.columns.push_back(stats_of(frame.feature_names[c], frame.features[c]));
  }
  return out;
}

TimeSeriesFrame take_sample(const TimeSeriesFrame& frame, std::size_t size) {
  if (size == 0) throw BoundsError("sample size must be positive");
  if (size > frame.size())
    throw BoundsError("sample size " + std::to_string(size) + " exceeds frame length " +
                      std::to_string(frame.size()));
  std::vector<std::size_t> rows(size);
  for (std::size_t i = 0; i < size; ++i) rows[i] = i;
  return take_rows(frame, rows);
}

TimeSeriesFrame select_features(const TimeSeriesFrame& frame, const std::vector<std::string>& names) {
  TimeSeriesFrame out = frame;
  out.features.clear();
  out.feature_names.clear();
  std::vector<ColumnRange> ranges;
  for (const auto& name : names) {
    auto it = std::find(frame.feature_names.begin(), frame.feature_names.end(), name);
    if (it == frame.feature_names.end()) throw SchemaError("unknown feature column '" + name + "'");
    const auto c = static_cast<std::size_t>(it - frame.feature_names.begin());
    out.features.push_back(frame.features[c]);
    out.feature_names.push_back(name);
    if (frame.scaling) ranges.push_back(frame.scaling->features[c]);
  }
  if (out.scaling) out.scaling->features = std::move(ranges);
  return out;
}

TimeSeriesFrame synth_demand(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw BoundsError("synthetic frame length must be positive");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Same start hour as the Panama file.
  const Timestamp start = *parse_datetime("2015-01-03 01:00:00");
  const std::vector<std::string> stations = {"toc", "san", "dav"};
  const double station_temp[] = {27.4, 26.9, 24.7};
  const double station_wind[] = {13.4, 7.0, 9.0};

  TimeSeriesFrame frame;
  for (const auto& st : stations)
    for (const char* var : {"T2M_", "QV2M_", "TQL_", "W2M_"}) frame.feature_names.push_back(var + st);
  frame.feature_names.push_back("holiday");
  frame.feature_names.push_back("school");
  frame.features.assign(frame.feature_names.size(), std::vector<double>(n));
  frame.timestamps.resize(n);
  frame.target.resize(n);

  double shared_anomaly = 0.0;
  double local_anomaly[3] = {0.0, 0.0, 0.0};
  double wind_state[3] = {0.0, 0.0, 0.0};
  double rain_state[3] = {0.0, 0.0, 0.0};
  double load_noise = 0.0;
  double felt_temp = 26.3;
  std::int64_t current_day = -1;
  bool holiday_today = false;

  for (std::size_t i = 0; i < n; ++i) {
    const Timestamp t = start + hours{static_cast<std::int64_t>(i)};
    frame.timestamps[i] = t;
    const std::int64_t secs = t.time_since_epoch().count();
    const std::int64_t day = secs / 86400;
    const double hour = static_cast<double>((secs / 3600) % 24);
    const int weekday = static_cast<int>((day + 4) % 7);  // 0 = Sunday
    int y = 0;
    unsigned month = 0, mday = 0;
    civil_from_days(day, y, month, mday);
    const double season = std::sin(two_pi * static_cast<double>(day % 365) / 365.0);

    if (day != current_day) {
      current_day = day;
      holiday_today = unit(rng) < 0.063;
    }
    const bool weekend = weekday == 0 || weekday == 6;
    const bool school = !weekend && !holiday_today && month >= 3 && month <= 11;

    shared_anomaly = 0.9 * shared_anomaly + 0.65 * normal(rng);
    const double diurnal = std::sin(two_pi * (hour - 8.0) / 24.0);
    double mean_temp = 0.0;
    for (std::size_t s = 0; s < 3; ++s) {
      local_anomaly[s] = 0.95 * local_anomaly[s] + 0.25 * normal(rng);
      const double temp = station_temp[s] + 1.0 * season + 1.6 * diurnal + shared_anomaly + local_anomaly[s];
      mean_temp += temp / 3.0;
      wind_state[s] = 0.97 * wind_state[s] + 0.24 * normal(rng);
      rain_state[s] = 0.9 * rain_state[s] + 0.03 * normal(rng);
      const double humidity = 0.0155 - 0.0004 * (temp - station_temp[s]) + 0.0003 * normal(rng);
      frame.features[4 * s + 0][i] = temp;
      frame.features[4 * s + 1][i] = std::max(0.005, humidity);
      frame.features[4 * s + 2][i] = std::max(0.0, 0.08 + rain_state[s]);
      frame.features[4 * s + 3][i] = std::max(0.0, station_wind[s] * (1.0 + 0.5 * wind_state[s]));
    }
    frame.features[12][i] = holiday_today ? 1.0 : 0.0;
    frame.features[13][i] = school ? 1.0 : 0.0;

    const double daily = 120.0 * std::sin(two_pi * (hour - 9.0) / 24.0) +
                         45.0 * std::sin(2.0 * two_pi * (hour - 5.0) / 24.0);
    const double weekly = weekend ? -95.0 : 0.0;
    load_noise = 0.5 * load_noise + 8.0 * normal(rng);
    const double cooling = felt_temp > 24.0 ? 18.0 * (felt_temp - 24.0) * (felt_temp - 24.0) : 0.0;
    double demand = 1100.0 + daily + weekly + (holiday_today ? -110.0 : 0.0) + (school ? 25.0 : 0.0) + cooling +
                    load_noise;
    frame.target[i] = std::max(85.19, demand);
    felt_temp = mean_temp;
  }
  return frame;
}

}  // namespace hpobench::data
