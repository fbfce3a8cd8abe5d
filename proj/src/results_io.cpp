#include "hpobench/results_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "hpobench/errors.hpp"
#include "hpobench/search_space.hpp"

namespace hpobench::io {

metrics::MetricRecord ResultRow::record() const {
  return {algorithm, variate, sample_size, mape, r2, runtime_s};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw Error("not a number: '" + std::string(text) + "'");
  return v;
}

namespace {

template <class T>
T parse_integer(std::string_view text) {
  T v{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw Error("not an integer: '" + std::string(text) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string sanitize(std::string s) {
  for (auto& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

void append_params(std::ostream& out, const gbt::HyperParams& hp) {
  for (double v : search::to_array(hp)) out << ',' << format_double(v);
}

}  // namespace

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kResultsHeader << '\n';
  for (const auto& r : rows) {
    out << r.run_id << ',' << r.algorithm << ',' << metrics::name(r.variate) << ',' << r.sample_size << ',' << r.seed
        << ',' << format_double(r.mape) << ',' << format_double(r.r2) << ',' << format_double(r.runtime_s);
    append_params(out, r.best);
    out << ',' << sanitize(r.status) << '\n';
  }
}

void write_results_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows) {
  std::ostringstream s;
  write_results_csv(s, rows);
  write_text(path, s.str());
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("results CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kResultsHeader) throw SchemaError("unexpected results CSV header");
  std::vector<ResultRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 15) throw ParseError(line_no, "expected 15 fields, found " + std::to_string(f.size()));
    try {
      ResultRow r;
      r.run_id = parse_integer<std::size_t>(f[0]);
      r.algorithm = std::string(f[1]);
      r.variate = metrics::parse_variate(f[2]);
      r.sample_size = parse_integer<std::size_t>(f[3]);
      r.seed = parse_integer<std::uint64_t>(f[4]);
      r.mape = parse_double(f[5]);
      r.r2 = parse_double(f[6]);
      r.runtime_s = parse_double(f[7]);
      std::array<double, search::kDimensions> hp{};
      for (std::size_t k = 0; k < hp.size(); ++k) hp[k] = parse_double(f[8 + k]);
      r.best = search::from_array(hp);
      r.status = std::string(f[14]);
      rows.push_back(std::move(r));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return rows;
}

std::vector<ResultRow> read_results_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_results_csv(in);
}

void write_trials_csv(std::ostream& out, const std::vector<TrialBlock>& blocks) {
  out << kTrialsHeader << '\n';
  for (const auto& b : blocks)
    for (const auto& t : b.result->history) {
      out << b.row->run_id << ',' << b.row->algorithm << ',' << metrics::name(b.row->variate) << ','
          << b.row->sample_size << ',' << t.index << ',' << format_double(t.objective) << ','
          << format_double(t.elapsed);
      append_params(out, t.params);
      out << '\n';
    }
}

void write_trials_csv(const std::filesystem::path& path, const std::vector<TrialBlock>& blocks) {
  std::ostringstream s;
  write_trials_csv(s, blocks);
  write_text(path, s.str());
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace hpobench::io
