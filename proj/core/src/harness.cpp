// Copyright 2026 The betacoal Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "betacoal/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "betacoal/stable_limits.hpp"

namespace betacoal {
namespace {

constexpr std::uint64_t kReferenceStream = 0x8000000000000000ULL;

struct NamedId {
  ExperimentId id;
  std::string_view name;
};

constexpr NamedId kExperiments[] = {
    {ExperimentId::theorem1, "theorem1"}, {ExperimentId::theorem2, "theorem2"},
    {ExperimentId::theorem3, "theorem3"}, {ExperimentId::lemma1, "lemma1"},
    {ExperimentId::lemma2, "lemma2"},     {ExperimentId::fig1, "fig1"},
    {ExperimentId::fig2, "fig2"},         {ExperimentId::ratio, "ratio"},
};

bool needs_trajectory(ExperimentId id) {
  return id == ExperimentId::theorem3 || id == ExperimentId::fig2;
}

// Experiment-specific numeric columns, after the shared
// replicate,seed,n,tau,L,ell prefix.
std::vector<std::string> stat_columns(ExperimentId id) {
  switch (id) {
    case ExperimentId::ratio:
      return {"ratio"};
    case ExperimentId::fig1:
      return {"tau_pow"};
    case ExperimentId::theorem1:
    case ExperimentId::lemma1:
    case ExperimentId::theorem2:
      return {"stat"};
    case ExperimentId::theorem3:
      return {"x_dev", "y_dev"};
    case ExperimentId::lemma2:
      return {"residual", "scaled_residual"};
    case ExperimentId::fig2:
      return {};
  }
  return {};
}

struct ReplicateRow {
  std::uint64_t seed = 0;
  Replicate rep;
  std::vector<double> stats;
};

std::vector<double> replicate_stats(ExperimentId id, const Replicate& rep,
                                    AlphaParam alpha) {
  const double a = alpha.value();
  switch (id) {
    case ExperimentId::ratio:
      return {rep.L > 0.0 ? rep.ell / rep.L : 0.0};
    case ExperimentId::fig1:
      return {std::pow(static_cast<double>(rep.tau), 2.0 - a)};
    case ExperimentId::theorem1:
      return {normalize_external(rep.ell, rep.n, alpha)};
    case ExperimentId::lemma1:
      return {normalize_tau(rep.tau, rep.n, alpha)};
    case ExperimentId::theorem2:
      return {normalize_total(rep.L, rep.n, alpha).value};
    case ExperimentId::theorem3:
      return {max_block_deviation(*rep.chain),
              max_external_deviation(*rep.chain, *rep.external)};
    case ExperimentId::lemma2: {
      const double residual = external_residual(rep.ell, rep.tau, alpha);
      const double scale =
          std::pow(static_cast<double>(rep.n),
                   external_residual_exponent(alpha) + 0.1);
      return {residual, residual / scale};
    }
    case ExperimentId::fig2:
      return {};
  }
  return {};
}

// Runs task(i) for i in [0, count) on `workers` threads. The first exception
// thrown by any task is rethrown after all threads join.
template <typename Task>
void parallel_for(std::int64_t count, unsigned workers, Task&& task) {
  if (workers <= 1 || count <= 1) {
    for (std::int64_t i = 0; i < count; ++i) {
      task(i);
    }
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= count || failed.load()) {
        return;
      }
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
        failed.store(true);
      }
    }
  };
  std::vector<std::jthread> threads;
  const auto n_threads =
      static_cast<unsigned>(std::min<std::int64_t>(workers, count));
  threads.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) {
    threads.emplace_back(worker);
  }
  threads.clear();
  if (error) {
    std::rethrow_exception(error);
  }
}

unsigned resolve_workers(unsigned requested) {
  if (requested == 0) {
    return std::max(1u, std::thread::hardware_concurrency());
  }
  return requested;
}

double cell_as_double(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          throw std::invalid_argument("column is not numeric");
        } else {
          return static_cast<double>(v);
        }
      },
      cell);
}

std::vector<double> sample_reference(const StableSpec& spec,
                                     std::uint64_t seed, std::int64_t count) {
  Stream rng(derive_seed(seed, kReferenceStream));
  std::vector<double> draws(static_cast<std::size_t>(count));
  for (auto& d : draws) {
    d = sample_stable(spec, rng);
  }
  return draws;
}

void attach_reference(LevelResult& level, const std::vector<double>& stat,
                      const ExperimentConfig& config, double scale,
                      std::string description) {
  const AlphaParam alpha(config.alpha);
  const auto reference =
      sample_reference(StableSpec::standard(alpha).scaled(scale), level.seed,
                       config.reference_samples);
  level.ks = ks_two_sample(stat, reference);
  level.ks_reference = std::move(description);
}

void write_cell(std::ostream& out, const Cell& cell) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) {
          out << csv_field(v);
        } else if constexpr (std::is_same_v<T, double>) {
          out << format_real(v);
        } else {
          out << v;
        }
      },
      cell);
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << csv_field(table.columns[c]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) {
        out << ',';
      }
      write_cell(out, row[c]);
    }
    out << '\n';
  }
}

nlohmann::json cell_json(const Cell& cell) {
  return std::visit([](const auto& v) { return nlohmann::json(v); }, cell);
}

nlohmann::json table_json(const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      obj[table.columns[c]] = cell_json(row[c]);
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

nlohmann::json summary_json(const SampleSummary& s) {
  return {{"count", s.count},   {"mean", s.mean},
          {"variance", s.variance}, {"standard_error", s.standard_error},
          {"q01", s.q01},       {"q25", s.q25},
          {"median", s.median}, {"q75", s.q75},
          {"q99", s.q99},       {"min", s.min},
          {"max", s.max}};
}

nlohmann::json config_json(const ExperimentConfig& c) {
  // Worker count and output path are not echoed; emitted bytes must not
  // depend on them.
  return {{"experiment", experiment_name(c.id)},
          {"alpha", c.alpha},
          {"n_grid", c.n_grid},
          {"replicates", c.replicates},
          {"master_seed", c.master_seed},
          {"storage", effective_storage(c) == StoragePolicy::trajectory
                          ? "trajectory"
                          : "summary"},
          {"reference_samples", c.reference_samples}};
}

}  // namespace

std::string_view experiment_name(ExperimentId id) {
  for (const auto& e : kExperiments) {
    if (e.id == id) {
      return e.name;
    }
  }
  return "?";
}

std::optional<ExperimentId> parse_experiment(std::string_view name) {
  for (const auto& e : kExperiments) {
    if (e.name == name) {
      return e.id;
    }
  }
  return std::nullopt;
}

std::optional<OutputFormat> parse_format(std::string_view name) {
  if (name == "csv") {
    return OutputFormat::csv;
  }
  if (name == "json") {
    return OutputFormat::json;
  }
  return std::nullopt;
}

void validate(const ExperimentConfig& config) {
  AlphaParam alpha(config.alpha);
  if (config.n_grid.empty()) {
    throw std::invalid_argument("n grid is empty");
  }
  for (std::int64_t n : config.n_grid) {
    if (n < 1) {
      throw std::invalid_argument("n must be >= 1, got " + std::to_string(n));
    }
  }
  std::vector<std::int64_t> sorted = config.n_grid;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("n grid contains duplicate levels");
  }
  if (config.replicates < 1) {
    throw std::invalid_argument("replicates must be >= 1");
  }
  if (config.reference_samples < 1) {
    throw std::invalid_argument("reference sample count must be >= 1");
  }
  if (config.storage == StoragePolicy::summary && needs_trajectory(config.id)) {
    throw std::invalid_argument(std::string(experiment_name(config.id)) +
                                " needs trajectory storage");
  }
  const bool normalized = config.id == ExperimentId::theorem1 ||
                          config.id == ExperimentId::theorem2 ||
                          config.id == ExperimentId::lemma1;
  if (normalized) {
    for (std::int64_t n : config.n_grid) {
      if (n < 2) {
        throw std::invalid_argument(std::string(experiment_name(config.id)) +
                                    " needs n >= 2");
      }
    }
  }
}

StoragePolicy effective_storage(const ExperimentConfig& config) {
  if (config.storage) {
    return *config.storage;
  }
  return needs_trajectory(config.id) ? StoragePolicy::trajectory
                                     : StoragePolicy::summary;
}

void apply_environment(ExperimentConfig& config) {
  const char* env = std::getenv("BETACOAL_WORKERS");
  if (env == nullptr) {
    return;
  }
  unsigned value = 0;
  const char* end = env + std::strlen(env);
  auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec == std::errc() && ptr == end && value > 0) {
    config.workers = value;
  }
}

std::uint64_t level_seed(std::uint64_t master_seed, std::int64_t n) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(n));
}

std::uint64_t replicate_seed(std::uint64_t level_seed, std::int64_t index) {
  return derive_seed(level_seed, static_cast<std::uint64_t>(index));
}

std::size_t Table::column_index(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    throw std::out_of_range("no column named " + std::string(name));
  }
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> ReplicateBatch::values(std::string_view name,
                                           std::int64_t n) const {
  const std::size_t col = records.column_index(name);
  const std::size_t n_col = records.column_index("n");
  std::vector<double> out;
  for (const auto& row : records.rows) {
    if (std::get<std::int64_t>(row[n_col]) == n) {
      out.push_back(cell_as_double(row[col]));
    }
  }
  return out;
}

const LevelResult& ReplicateBatch::level(std::int64_t n) const {
  for (const auto& l : levels) {
    if (l.n == n) {
      return l;
    }
  }
  throw std::out_of_range("no level with n = " + std::to_string(n));
}

ReplicateBatch run_experiment(const ExperimentConfig& config) {
  validate(config);
  const AlphaParam alpha(config.alpha);
  const StoragePolicy storage = effective_storage(config);
  const unsigned workers = resolve_workers(config.workers);
  const auto max_n =
      *std::max_element(config.n_grid.begin(), config.n_grid.end());
  const auto rates = shared_rates(alpha, max_n);
  const auto extra = stat_columns(config.id);

  ReplicateBatch batch;
  batch.config = config;
  batch.records.columns = {"replicate", "seed", "n", "tau", "L", "ell"};
  batch.records.columns.insert(batch.records.columns.end(), extra.begin(),
                               extra.end());
  if (config.id == ExperimentId::theorem2) {
    batch.records.columns.push_back("regime");
  }
  if (config.id == ExperimentId::fig2) {
    batch.trajectory.emplace();
    batch.trajectory->columns = {"n", "j", "X", "Y", "ref_curve"};
  }

  const std::string regime(regime_name(total_length_regime(alpha)));
  for (std::int64_t n : config.n_grid) {
    LevelResult level;
    level.n = n;
    level.seed = level_seed(config.master_seed, n);

    std::vector<ReplicateRow> rows(static_cast<std::size_t>(config.replicates));
    parallel_for(config.replicates, workers, [&](std::int64_t i) {
      ReplicateRow& row = rows[static_cast<std::size_t>(i)];
      row.seed = replicate_seed(level.seed, i);
      Stream chain_rng = lane_stream(row.seed, Lane::chain);
      Stream thin_rng = lane_stream(row.seed, Lane::thinning);
      row.rep = simulate_replicate(n, *rates, chain_rng, thin_rng, storage);
      row.stats = replicate_stats(config.id, row.rep, alpha);
      if (!(config.id == ExperimentId::fig2 && i == 0)) {
        row.rep.chain.reset();
        row.rep.external.reset();
      }
    });

    for (std::size_t i = 0; i < rows.size(); ++i) {
      const ReplicateRow& row = rows[i];
      std::vector<Cell> cells{static_cast<std::int64_t>(i), row.seed, n,
                              row.rep.tau, row.rep.L, row.rep.ell};
      for (double s : row.stats) {
        cells.emplace_back(s);
      }
      if (config.id == ExperimentId::theorem2) {
        cells.emplace_back(regime);
      }
      batch.records.rows.push_back(std::move(cells));
    }

    std::vector<std::string> summarized = {"tau", "L", "ell"};
    summarized.insert(summarized.end(), extra.begin(), extra.end());
    std::map<std::string, std::vector<double>> columns;
    for (const auto& name : summarized) {
      auto& col = columns[name];
      col.reserve(rows.size());
      for (const auto& row : rows) {
        if (name == "tau") {
          col.push_back(static_cast<double>(row.rep.tau));
        } else if (name == "L") {
          col.push_back(row.rep.L);
        } else if (name == "ell") {
          col.push_back(row.rep.ell);
        } else {
          const auto pos = static_cast<std::size_t>(
              std::find(extra.begin(), extra.end(), name) - extra.begin());
          col.push_back(row.stats[pos]);
        }
      }
      level.summaries[name] = summarize(col);
    }

    switch (config.id) {
      case ExperimentId::theorem1:
        attach_reference(level, columns["stat"], config,
                         limit_constants(alpha).c2, "c2 * stable");
        break;
      case ExperimentId::lemma1:
        attach_reference(level, columns["stat"], config,
                         tau_limit_scale(alpha), "tau_limit_scale * stable");
        break;
      case ExperimentId::theorem2:
        if (total_length_regime(alpha) != Regime::bounded) {
          attach_reference(level, columns["stat"], config,
                           total_limit_scale(alpha),
                           "total_limit_scale * stable");
        }
        break;
      case ExperimentId::fig1:
        if (rows.size() >= 2) {
          level.scalars["corr_ell_tau_pow"] =
              pearson_correlation(columns["ell"], columns["tau_pow"]);
          level.scalars["corr_ell_L"] =
              pearson_correlation(columns["ell"], columns["L"]);
          level.scalars["corr_L_tau_pow"] =
              pearson_correlation(columns["L"], columns["tau_pow"]);
        }
        break;
      case ExperimentId::fig2: {
        const ChainTrajectory& chain = *rows.front().rep.chain;
        const ExternalTrajectory& ext = *rows.front().rep.external;
        const std::int64_t tau = chain.tau;
        for (std::int64_t j = 0; j <= tau; ++j) {
          const double frac =
              tau > 0 ? static_cast<double>(j) / static_cast<double>(tau) : 1.0;
          batch.trajectory->rows.push_back(
              {n, j, chain.x[tau - j], ext.y[tau - j],
               static_cast<double>(n) * std::pow(frac, alpha.value())});
        }
        break;
      }
      case ExperimentId::ratio:
        level.scalars["mean_ratio"] = level.summaries["ratio"].mean;
        break;
      default:
        break;
    }
    batch.levels.push_back(std::move(level));
  }
  return batch;
}

void emit(const ReplicateBatch& batch, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::csv) {
    write_csv(out, batch.trajectory ? *batch.trajectory : batch.records);
    return;
  }
  nlohmann::json doc;
  doc["config"] = config_json(batch.config);
  doc["records"] = table_json(batch.records);
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& level : batch.levels) {
    nlohmann::json l;
    l["n"] = level.n;
    l["seed"] = level.seed;
    nlohmann::json summaries = nlohmann::json::object();
    for (const auto& [name, s] : level.summaries) {
      summaries[name] = summary_json(s);
    }
    l["summaries"] = std::move(summaries);
    l["scalars"] = level.scalars;
    if (level.ks) {
      l["ks"] = {{"statistic", level.ks->statistic},
                 {"p_value", level.ks->p_value},
                 {"reference", level.ks_reference}};
    }
    levels.push_back(std::move(l));
  }
  doc["levels"] = std::move(levels);
  if (batch.trajectory) {
    doc["trajectory"] = table_json(*batch.trajectory);
  }
  out << doc.dump(1) << '\n';
}

void emit(const ReplicateBatch& batch, OutputFormat format,
          const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() +
                             " for writing: " + std::strerror(errno));
  }
  emit(batch, format, out);
  out.flush();
  if (!out) {
    throw std::runtime_error("write to " + path.string() + " failed");
  }
}

std::string format_real(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value,
                                     std::chars_format::general, 17);
  return std::string(buf, result.ptr);
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(text);
  }
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') {
      quoted += '"';
    }
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace betacoal
