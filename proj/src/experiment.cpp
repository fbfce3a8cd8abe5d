#include "hpobench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "hpobench/errors.hpp"
#include "hpobench/feature_builder.hpp"
#include "hpobench/svg_plot.hpp"

namespace hpobench::experiment {

PreparedSource prepare_source(const ExperimentConfig& cfg) {
  cfg.validate();
  data::TimeSeriesFrame raw;
  if (cfg.synthetic) {
    raw = data::synth_demand(cfg.synthetic_rows ? cfg.synthetic_rows : cfg.sizes.back(), cfg.seed);
  } else {
    raw = data::load_csv(*cfg.data_path);
  }
  raw = data::dedup_by_index(raw);
  if (!cfg.features.empty()) raw = data::select_features(raw, cfg.features);
  if (raw.size() < cfg.sizes.back())
    throw BoundsError("data has " + std::to_string(raw.size()) + " rows, fewer than the largest size " +
                      std::to_string(cfg.sizes.back()));
  auto scaled = data::fit_apply_minmax(raw);
  return {std::move(scaled.frame), std::move(scaled.params)};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t cell_seed(std::uint64_t master, opt::Algorithm a, metrics::Variate v, std::size_t size, int repeat) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ fnv1a(opt::name(a)));
  h = splitmix64(h ^ fnv1a(metrics::name(v)));
  h = splitmix64(h ^ static_cast<std::uint64_t>(size));
  h = splitmix64(h ^ static_cast<std::uint64_t>(repeat));
  return h;
}

std::vector<CellSpec> plan_cells(const ExperimentConfig& cfg) {
  std::vector<CellSpec> cells;
  for (auto v : cfg.variates)
    for (auto size : cfg.sizes)
      for (auto a : cfg.algorithms)
        for (int r = 0; r < cfg.repeats; ++r) cells.push_back({a, v, size, r, cell_seed(cfg.seed, a, v, size, r)});
  return cells;
}

objective::Mode objective_mode_for(opt::Algorithm a) {
  return a == opt::Algorithm::Random ? objective::Mode::Cv5 : objective::Mode::Holdout;
}

CellResult run_cell(const PreparedSource& source, const ExperimentConfig& cfg, const CellSpec& cell,
                    std::size_t run_id) {
  CellResult out;
  auto& row = out.row;
  row.run_id = run_id;
  row.algorithm = std::string(opt::name(cell.algorithm));
  row.variate = cell.variate;
  row.sample_size = cell.sample_size;
  row.seed = cell.seed;
  try {
    const auto sample = data::take_sample(source.frame, cell.sample_size);
    const features::LagConfig lag{cfg.lag, cell.variate == metrics::Variate::Multivariate};
    const auto split = features::chrono_split(features::make_supervised(sample, lag), cfg.test_fraction);
    const std::uint64_t fit_seed = cell.seed ^ 0x5bd1e9955bd1e995ULL;

    auto counter = std::make_shared<std::atomic<long>>(0);
    auto [result, runtime] = metrics::timed([&] {
      objective::Evaluator evaluator(
          {split.train, objective_mode_for(cell.algorithm), cfg.holdout_fraction, fit_seed, counter});
      return opt::run(
          cell.algorithm, [&evaluator](const gbt::HyperParams& hp) { return evaluator(hp); }, cfg.space, cfg.budget,
          cell.seed);
    });
    out.objective_fits = counter->load();
    out.optimization = std::move(result);
    row.runtime_s = runtime;
    row.best = out.optimization.best_params;

    const auto model = gbt::fit(split.train, row.best, fit_seed);
    const auto actual = source.scaling.inverse_target(split.test.y);
    const auto predicted = source.scaling.inverse_target(gbt::predict(model, split.test.X));
    row.mape = metrics::mape(actual, predicted);
    row.r2 = metrics::r_squared(actual, predicted);
    row.status = "ok";
  } catch (const std::exception& e) {
    out.error = e.what();
    row.status = "failed";
    row.mape = row.r2 = row.runtime_s = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

bool RunLedger::all_ok() const {
  return std::all_of(cells.begin(), cells.end(), [](const CellResult& c) { return c.row.ok(); });
}

std::vector<io::ResultRow> RunLedger::rows() const {
  std::vector<io::ResultRow> out;
  for (const auto& c : cells) out.push_back(c.row);
  return out;
}

std::vector<metrics::MetricRecord> RunLedger::records() const {
  std::vector<metrics::MetricRecord> out;
  for (const auto& c : cells)
    if (c.row.ok()) out.push_back(c.row.record());
  return out;
}

std::size_t effective_workers(const ExperimentConfig& cfg) {
  std::size_t n = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HPOBENCH_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = std::min(n, static_cast<std::size_t>(v));
  }
  return std::max<std::size_t>(1, n);
}

RunLedger run_experiment(const ExperimentConfig& cfg, const ProgressFn& progress) {
  return run_experiment(cfg, prepare_source(cfg), progress);
}

RunLedger run_experiment(const ExperimentConfig& cfg, const PreparedSource& source, const ProgressFn& progress) {
  cfg.validate();
  RunLedger ledger;
  ledger.config = cfg;
  const auto plan = plan_cells(cfg);
  ledger.cells.resize(plan.size());
  std::atomic<std::size_t> next{0};
  std::size_t done = 0;
  std::mutex mu;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= plan.size()) return;
      ledger.cells[i] = run_cell(source, cfg, plan[i], i + 1);
      std::lock_guard lock(mu);
      ++done;
      if (progress) progress(ledger.cells[i], done, plan.size());
    }
  };
  const std::size_t workers = std::min(effective_workers(cfg), plan.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return ledger;
}

// --- Reports --------------------------------------------------------------

std::string_view name(Metric m) {
  switch (m) {
    case Metric::Mape: return "mape";
    case Metric::R2: return "r2";
    case Metric::Runtime: return "runtime";
  }
  return "unknown";
}

double metric_value(const io::ResultRow& row, Metric m) {
  switch (m) {
    case Metric::Mape: return row.mape;
    case Metric::R2: return row.r2;
    case Metric::Runtime: return row.runtime_s;
  }
  return 0.0;
}

namespace {

std::vector<metrics::Variate> variates_in(const std::vector<io::ResultRow>& rows) {
  std::vector<metrics::Variate> out;
  for (auto v : {metrics::Variate::Univariate, metrics::Variate::Multivariate})
    if (std::any_of(rows.begin(), rows.end(), [v](const io::ResultRow& r) { return r.variate == v; })) out.push_back(v);
  return out;
}

/// Successful values per algorithm, in first-appearance order.
std::vector<std::pair<std::string, std::vector<double>>> grouped(const std::vector<io::ResultRow>& rows,
                                                                 metrics::Variate v, Metric m) {
  std::vector<std::pair<std::string, std::vector<double>>> out;
  for (const auto& r : rows) {
    if (r.variate != v || !r.ok()) continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& g) { return g.first == r.algorithm; });
    if (it == out.end()) {
      out.emplace_back(r.algorithm, std::vector<double>{});
      it = std::prev(out.end());
    }
    it->second.push_back(metric_value(r, m));
  }
  return out;
}

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<io::ResultRow>& rows) {
  std::vector<SummaryRow> out;
  for (auto m : kAllMetrics)
    for (auto v : variates_in(rows))
      for (const auto& [algo, values] : grouped(rows, v, m)) {
        SummaryRow s;
        s.metric = m;
        s.variate = v;
        s.algorithm = algo;
        s.n = values.size();
        s.min = *std::min_element(values.begin(), values.end());
        s.max = *std::max_element(values.begin(), values.end());
        double sum = 0.0;
        for (double x : values) sum += x;
        s.mean = sum / static_cast<double>(values.size());
        double ss = 0.0;
        for (double x : values) ss += (x - s.mean) * (x - s.mean);
        s.sd = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
        out.push_back(std::move(s));
      }
  return out;
}

std::string format_summary_csv(const std::vector<SummaryRow>& summary) {
  std::ostringstream o;
  o << "metric,variate,algorithm,n,min,max,mean,sd\n";
  for (const auto& s : summary)
    o << name(s.metric) << ',' << metrics::name(s.variate) << ',' << s.algorithm << ',' << s.n << ','
      << io::format_double(s.min) << ',' << io::format_double(s.max) << ',' << io::format_double(s.mean) << ','
      << io::format_double(s.sd) << '\n';
  return o.str();
}

std::vector<StatsBlock> run_stats(const std::vector<io::ResultRow>& rows, double alpha) {
  std::vector<StatsBlock> out;
  for (auto m : kAllMetrics)
    for (auto v : variates_in(rows)) {
      StatsBlock b;
      b.metric = m;
      b.variate = v;
      stats::Groups groups;
      for (auto& [algo, values] : grouped(rows, v, m)) {
        if (values.size() < 2) continue;
        b.algorithms.push_back(algo);
        groups.push_back(values);
      }
      if (groups.size() < 2) {
        b.error = "need at least two algorithms with two or more records";
      } else {
        try {
          b.kruskal = stats::kruskal_wallis(groups);
          b.pairwise = stats::dunn_bonferroni(groups, alpha);
        } catch (const Error& e) {
          b.error = e.what();
        }
      }
      out.push_back(std::move(b));
    }
  return out;
}

std::string format_stats_report(const std::vector<StatsBlock>& blocks) {
  std::ostringstream o;
  for (const auto& b : blocks) {
    o << "[" << name(b.metric) << " " << metrics::name(b.variate) << "]\n";
    if (!b.error.empty()) {
      o << "error: " << b.error << "\n\n";
      continue;
    }
    const auto& kw = *b.kruskal;
    const auto& pw = *b.pairwise;
    o << "kruskal_wallis H=" << io::format_double(kw.H) << " df=" << kw.df << " p=" << io::format_double(kw.p_value)
      << " tie_correction=" << io::format_double(kw.tie_correction) << "\n";
    o << "mean_ranks";
    for (std::size_t i = 0; i < b.algorithms.size(); ++i)
      o << ' ' << b.algorithms[i] << '=' << io::format_double(kw.mean_ranks[i]);
    o << "\n";
    o << "pairwise mean-rank differences (row minus column; * adjusted p < " << io::format_double(pw.alpha)
      << ", Bonferroni x" << io::format_double(pw.multiplier) << ")\n";
    o << "algorithm";
    for (std::size_t j = 0; j + 1 < b.algorithms.size(); ++j) o << ',' << b.algorithms[j];
    o << "\n";
    for (std::size_t i = 1; i < b.algorithms.size(); ++i) {
      o << b.algorithms[i];
      for (std::size_t j = 0; j + 1 < b.algorithms.size(); ++j) {
        o << ',';
        if (j < i) {
          const auto c = pw.at(i, j);
          o << io::format_double(c.difference) << (c.significant ? "*" : "");
        }
      }
      o << "\n";
    }
    for (const auto& c : pw.cells)
      o << b.algorithms[c.i] << " vs " << b.algorithms[c.j] << ": diff=" << io::format_double(c.difference)
        << " z=" << io::format_double(c.z) << " p=" << io::format_double(c.p_raw)
        << " p_adj=" << io::format_double(c.p_adjusted) << (c.significant ? " significant" : "") << "\n";
    o << "\n";
  }
  return o.str();
}

std::vector<std::filesystem::path> emit_plots(const std::vector<io::ResultRow>& rows,
                                              const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  std::vector<std::filesystem::path> written;
  for (auto v : {metrics::Variate::Univariate, metrics::Variate::Multivariate}) {
    if (std::none_of(rows.begin(), rows.end(), [v](const io::ResultRow& r) { return r.variate == v; })) continue;
    for (auto m : kAllMetrics) {
      plot::LineChart chart;
      const std::string label = m == Metric::Mape ? "MAPE" : m == Metric::R2 ? "R2" : "Runtime (s)";
      chart.title = label + ", " + std::string(metrics::name(v)) + ", min-max scaled";
      chart.x_label = "Sample size";
      chart.y_label = label + " (scaled 0-1)";
      std::vector<std::string> order;
      std::map<std::string, std::map<std::size_t, std::pair<double, int>>> acc;
      for (const auto& r : rows) {
        if (r.variate != v || !r.ok()) continue;
        if (std::find(order.begin(), order.end(), r.algorithm) == order.end()) order.push_back(r.algorithm);
        auto& cell = acc[r.algorithm][r.sample_size];
        cell.first += metric_value(r, m);
        cell.second += 1;
      }
      for (const auto& algo : order) {
        plot::Series s{algo, {}, {}};
        for (const auto& [size, sum] : acc[algo]) {
          s.x.push_back(static_cast<double>(size));
          s.y.push_back(sum.first / sum.second);
        }
        chart.series.push_back(std::move(s));
      }
      const plot::LineChart raw = chart;
      plot::scale_unit(chart);
      const auto path = out_dir / (std::string(name(m)) + "_" + std::string(metrics::name(v)) + ".svg");
      io::write_text(path, plot::render_svg(chart, raw));
      written.push_back(path);
    }
  }
  return written;
}

void write_outputs(const RunLedger& ledger, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create " + out_dir.string() + ": " + ec.message());
  const auto rows = ledger.rows();
  io::write_results_csv(out_dir / "results.csv", rows);
  std::vector<io::TrialBlock> blocks;
  for (std::size_t i = 0; i < ledger.cells.size(); ++i) blocks.push_back({&rows[i], &ledger.cells[i].optimization});
  io::write_trials_csv(out_dir / "trials.csv", blocks);
  io::write_text(out_dir / "summary.csv", format_summary_csv(summarize(rows)));
  io::write_text(out_dir / "stats.txt", format_stats_report(run_stats(rows)));
  io::write_text(out_dir / "config.txt", to_config_text(ledger.config));
  emit_plots(rows, out_dir);
}

}  // namespace hpobench::experiment
