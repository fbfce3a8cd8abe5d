#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "hpobench/errors.hpp"
#include "hpobench/experiment.hpp"

namespace hpobench::experiment {

std::vector<std::size_t> ExperimentConfig::default_sizes() {
  std::vector<std::size_t> s;
  for (std::size_t n = 1000; n <= 20000; n += 1000) s.push_back(n);
  return s;
}

void ExperimentConfig::validate() const {
  if (!synthetic && !data_path) throw ConfigError("either a data path or synthetic mode is required");
  if (sizes.empty()) throw ConfigError("sizes must not be empty");
  if (lag < 1) throw ConfigError("lag must be at least 1");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw ConfigError("sizes must be strictly ascending");
    if (sizes[i] < lag + 25) throw ConfigError("size " + std::to_string(sizes[i]) + " is below lag + 25");
  }
  if (variates.empty()) throw ConfigError("variates must not be empty");
  if (algorithms.empty()) throw ConfigError("algorithms must not be empty");
  budget.validate();
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw ConfigError("test_fraction must lie in (0, 1)");
  if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0)) throw ConfigError("holdout_fraction must lie in (0, 1)");
  if (repeats < 1) throw ConfigError("repeats must be at least 1");
  if (synthetic && synthetic_rows != 0 && synthetic_rows < sizes.back())
    throw ConfigError("synthetic_rows is smaller than the largest size");
  space.validate();
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(',', start);
    const auto item = trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (!item.empty()) out.push_back(item);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T to_number(std::string_view text, std::string_view key) {
  T v{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw ConfigError("invalid value for " + std::string(key) + ": '" + std::string(text) + "'");
  return v;
}

bool to_bool(std::string_view text, std::string_view key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("invalid boolean for " + std::string(key) + ": '" + std::string(text) + "'");
}

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + io::format_double(v[i]);
  return s;
}

}  // namespace

std::vector<std::size_t> parse_size_list(std::string_view text) {
  std::vector<std::size_t> out;
  for (auto item : split_list(text)) {
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      out.push_back(to_number<std::size_t>(item, "sizes"));
      continue;
    }
    const auto parts = item.substr(colon + 1);
    const auto colon2 = parts.find(':');
    if (colon2 == std::string_view::npos) throw ConfigError("size range must be start:stop:step");
    const auto start = to_number<std::size_t>(item.substr(0, colon), "sizes");
    const auto stop = to_number<std::size_t>(parts.substr(0, colon2), "sizes");
    const auto step = to_number<std::size_t>(parts.substr(colon2 + 1), "sizes");
    if (step == 0) throw ConfigError("size range step must be positive");
    for (std::size_t n = start; n <= stop; n += step) out.push_back(n);
  }
  return out;
}

std::vector<opt::Algorithm> parse_algorithm_list(std::string_view text) {
  std::vector<opt::Algorithm> out;
  for (auto item : split_list(text)) {
    const auto a = opt::parse_algorithm(item);
    if (!a) throw ConfigError("unknown algorithm: " + std::string(item));
    if (std::find(out.begin(), out.end(), *a) != out.end()) throw ConfigError("duplicate algorithm: " + std::string(item));
    out.push_back(*a);
  }
  return out;
}

std::vector<metrics::Variate> parse_variate_list(std::string_view text) {
  std::vector<metrics::Variate> out;
  for (auto item : split_list(text)) {
    const auto v = metrics::parse_variate(item);
    if (std::find(out.begin(), out.end(), v) != out.end()) throw ConfigError("duplicate variate: " + std::string(item));
    out.push_back(v);
  }
  return out;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  bool saw_version = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    try {
      if (key == "schema_version") {
        if (to_number<int>(value, key) != kSchemaVersion)
          throw ConfigError("unsupported schema_version " + std::string(value));
        saw_version = true;
      } else if (key == "data") {
        cfg.data_path = std::filesystem::path(std::string(value));
      } else if (key == "synthetic") {
        cfg.synthetic = to_bool(value, key);
      } else if (key == "synthetic_rows") {
        cfg.synthetic_rows = to_number<std::size_t>(value, key);
      } else if (key == "seed") {
        cfg.seed = to_number<std::uint64_t>(value, key);
      } else if (key == "sizes") {
        cfg.sizes = parse_size_list(value);
      } else if (key == "variates") {
        cfg.variates = parse_variate_list(value);
      } else if (key == "algorithms") {
        cfg.algorithms = parse_algorithm_list(value);
      } else if (key == "lag") {
        cfg.lag = to_number<std::size_t>(value, key);
      } else if (key == "features") {
        cfg.features.clear();
        for (auto f : split_list(value)) cfg.features.emplace_back(f);
      } else if (key == "max_trials") {
        cfg.budget.max_trials = to_number<int>(value, key);
      } else if (key == "patience") {
        cfg.budget.patience = to_number<int>(value, key);
      } else if (key == "test_fraction") {
        cfg.test_fraction = io::parse_double(value);
      } else if (key == "holdout_fraction") {
        cfg.holdout_fraction = io::parse_double(value);
      } else if (key == "repeats") {
        cfg.repeats = to_number<int>(value, key);
      } else if (key == "out") {
        cfg.out_dir = std::filesystem::path(std::string(value));
      } else if (key == "workers") {
        cfg.workers = to_number<std::size_t>(value, key);
      } else if (key.starts_with("grid.")) {
        const auto param = key.substr(5);
        std::size_t d = 0;
        while (d < search::kDimensions && param != search::kParamNames[d]) ++d;
        if (d == search::kDimensions) throw ConfigError("unknown grid parameter: " + std::string(param));
        cfg.space.grids[d].clear();
        for (auto item : split_list(value)) cfg.space.grids[d].push_back(io::parse_double(item));
      } else {
        throw ConfigError("unknown key: " + std::string(key));
      }
    } catch (const Error& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!saw_version) throw ConfigError("missing schema_version");
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return parse_config(s.str());
}

std::string to_config_text(const ExperimentConfig& cfg) {
  std::ostringstream o;
  o << "schema_version = " << kSchemaVersion << '\n';
  if (cfg.data_path) o << "data = " << cfg.data_path->string() << '\n';
  o << "synthetic = " << (cfg.synthetic ? "true" : "false") << '\n';
  o << "synthetic_rows = " << cfg.synthetic_rows << '\n';
  o << "seed = " << cfg.seed << '\n';
  o << "sizes = ";
  for (std::size_t i = 0; i < cfg.sizes.size(); ++i) o << (i ? "," : "") << cfg.sizes[i];
  o << "\nvariates = ";
  for (std::size_t i = 0; i < cfg.variates.size(); ++i) o << (i ? "," : "") << metrics::name(cfg.variates[i]);
  o << "\nalgorithms = ";
  for (std::size_t i = 0; i < cfg.algorithms.size(); ++i) o << (i ? "," : "") << opt::name(cfg.algorithms[i]);
  o << "\nlag = " << cfg.lag << '\n';
  o << "features = ";
  for (std::size_t i = 0; i < cfg.features.size(); ++i) o << (i ? "," : "") << cfg.features[i];
  o << "\nmax_trials = " << cfg.budget.max_trials << '\n';
  o << "patience = " << cfg.budget.patience << '\n';
  o << "test_fraction = " << io::format_double(cfg.test_fraction) << '\n';
  o << "holdout_fraction = " << io::format_double(cfg.holdout_fraction) << '\n';
  o << "repeats = " << cfg.repeats << '\n';
  o << "out = " << cfg.out_dir.string() << '\n';
  o << "workers = " << cfg.workers << '\n';
  for (std::size_t d = 0; d < search::kDimensions; ++d)
    o << "grid." << search::kParamNames[d] << " = " << join_doubles(cfg.space.grids[d]) << '\n';
  return o.str();
}

}  // namespace hpobench::experiment
