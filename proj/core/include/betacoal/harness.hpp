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

#ifndef BETACOAL_HARNESS_HPP
#define BETACOAL_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "betacoal/replicate.hpp"
#include "betacoal/stats.hpp"

namespace betacoal {

enum class ExperimentId {
  theorem1,
  theorem2,
  theorem3,
  lemma1,
  lemma2,
  fig1,
  fig2,
  ratio,
};

std::string_view experiment_name(ExperimentId id);
std::optional<ExperimentId> parse_experiment(std::string_view name);

enum class OutputFormat { csv, json };

std::optional<OutputFormat> parse_format(std::string_view name);

struct ExperimentConfig {
  ExperimentId id = ExperimentId::ratio;
  double alpha = 1.5;
  /// One entry per n level; a single-n experiment has one entry.
  std::vector<std::int64_t> n_grid{1000};
  std::int64_t replicates = 1;
  std::uint64_t master_seed = 0;
  /// 0 means one worker per hardware thread.
  unsigned workers = 1;
  std::string output_path;
  OutputFormat format = OutputFormat::csv;
  /// Unset: trajectory storage for theorem3 and fig2, summary otherwise.
  std::optional<StoragePolicy> storage;
  /// Draws of the limiting stable law per level for KS comparisons.
  std::int64_t reference_samples = 100000;
};

/// Throws std::invalid_argument describing the first violated constraint.
void validate(const ExperimentConfig& config);

StoragePolicy effective_storage(const ExperimentConfig& config);

/// Overrides config.workers from BETACOAL_WORKERS when that variable holds a
/// positive integer.
void apply_environment(ExperimentConfig& config);

/// Seed namespace of one n level. Levels are keyed by n, so a level's
/// replicates do not depend on which other levels share the grid.
std::uint64_t level_seed(std::uint64_t master_seed, std::int64_t n);
/// Seed of replicate `index` within a level.
std::uint64_t replicate_seed(std::uint64_t level_seed, std::int64_t index);

using Cell = std::variant<std::int64_t, std::uint64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Index of `name` in columns; throws std::out_of_range when absent.
  std::size_t column_index(std::string_view name) const;
};

struct LevelResult {
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  std::map<std::string, SampleSummary> summaries;
  std::map<std::string, double> scalars;
  /// Two-sample KS of `stat` against draws of `ks_reference`.
  std::optional<KsResult> ks;
  std::string ks_reference;
};

struct ReplicateBatch {
  ExperimentConfig config;
  /// One row per (level, replicate), sorted by level then replicate index.
  /// Columns replicate, seed, n, tau, L, ell, then per experiment:
  /// ratio = ell / L; fig1 tau_pow = tau^(2 - alpha); theorem1, lemma1 and
  /// theorem2 stat (plus regime for theorem2); theorem3 x_dev, y_dev; lemma2
  /// residual, scaled_residual.
  Table records;
  /// fig2 only: (n, j, X, Y, ref_curve) for replicate 0 of each level.
  std::optional<Table> trajectory;
  std::vector<LevelResult> levels;

  /// Numeric column `name` restricted to rows of level n.
  std::vector<double> values(std::string_view name, std::int64_t n) const;
  const LevelResult& level(std::int64_t n) const;
};

/// Run every replicate of every level, in parallel over config.workers
/// threads. Output is independent of the worker count.
ReplicateBatch run_experiment(const ExperimentConfig& config);

/// CSV: header row, RFC 4180 quoting, reals with 17 significant digits. fig2
/// writes its trajectory table, other experiments their records. JSON: one
/// object with config, records, levels (and trajectory for fig2).
void emit(const ReplicateBatch& batch, OutputFormat format, std::ostream& out);

/// Throws std::runtime_error naming `path` when it cannot be written.
void emit(const ReplicateBatch& batch, OutputFormat format,
          const std::filesystem::path& path);

/// %.17g rendering; reads back to the same double.
std::string format_real(double value);

/// Quote a CSV field when it contains a comma, quote or line break.
std::string csv_field(std::string_view text);

}  // namespace betacoal

#endif  // BETACOAL_HARNESS_HPP
