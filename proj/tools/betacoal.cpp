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

// betacoal command-line interface.
//
//   betacoal rates table --alpha A --b B
//   betacoal simulate --n N --alpha A --seed S [--store-trajectory]
//   betacoal oracle --n N --alpha A --reps R --seed S [--store-history]
//   betacoal stable sample --alpha A --count C --seed S
//   betacoal constants --alpha A
//   betacoal experiment <id> --alpha A --n N [--n-grid N1,N2] --reps R ...

#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "betacoal/harness.hpp"
#include "betacoal/oracle.hpp"
#include "betacoal/rates.hpp"
#include "betacoal/replicate.hpp"
#include "betacoal/stable_limits.hpp"

namespace {

using betacoal::format_real;

void run_rates_table(double alpha_value, std::int64_t b) {
  const betacoal::AlphaParam alpha(alpha_value);
  const auto table = betacoal::merger_rate_table(b, alpha);
  std::cout << "k,lambda_bk,binom_weight,pmf\n";
  for (std::int64_t k = 2; k <= b; ++k) {
    const auto i = static_cast<std::size_t>(k - 2);
    std::cout << k << ',' << format_real(table.per_subset_rates[i]) << ','
              << format_real(table.binom_weights[i]) << ','
              << format_real(table.size_pmf[i]) << '\n';
  }
}

void run_simulate(std::int64_t n, double alpha_value, std::uint64_t seed,
                  bool store) {
  const betacoal::AlphaParam alpha(alpha_value);
  const auto policy = store ? betacoal::StoragePolicy::trajectory
                            : betacoal::StoragePolicy::summary;
  const auto rep = betacoal::simulate_replicate(n, alpha, seed, policy);
  nlohmann::json out = {{"n", n},          {"alpha", alpha_value},
                        {"seed", seed},    {"tau", rep.tau},
                        {"L", rep.L},      {"ell", rep.ell}};
  if (rep.chain) {
    out["x"] = rep.chain->x;
    out["u"] = rep.chain->u;
    out["dt"] = rep.chain->dt;
    out["y"] = rep.external->y;
  }
  std::cout << out.dump() << '\n';
}

struct OracleOptions {
  std::int64_t n = 10;
  double alpha = 1.5;
  std::int64_t reps = 1;
  std::uint64_t seed = 0;
  bool store_history = false;
  std::string history_out = "oracle_history.json";
};

void run_oracle(const OracleOptions& opt) {
  const betacoal::AlphaParam alpha(opt.alpha);
  if (opt.reps < 1) {
    throw std::invalid_argument("--reps must be >= 1");
  }
  const std::uint64_t level = betacoal::level_seed(opt.seed, opt.n);
  nlohmann::json histories = nlohmann::json::array();
  std::cout << "replicate,seed,n,tau,L,ell\n";
  for (std::int64_t i = 0; i < opt.reps; ++i) {
    const std::uint64_t seed = betacoal::replicate_seed(level, i);
    betacoal::Stream rng =
        betacoal::lane_stream(seed, betacoal::Lane::oracle);
    const auto h =
        betacoal::simulate_partition(opt.n, alpha, rng, opt.store_history);
    std::cout << i << ',' << seed << ',' << opt.n << ',' << h.tau << ','
              << format_real(h.L) << ',' << format_real(h.ell) << '\n';
    if (opt.store_history) {
      nlohmann::json states = nlohmann::json::array();
      for (const auto& s : h.states) {
        states.push_back({{"time", s.time}, {"blocks", s.blocks}});
      }
      histories.push_back({{"replicate", i},
                           {"seed", seed},
                           {"tau", h.tau},
                           {"L", h.L},
                           {"ell", h.ell},
                           {"x", h.x},
                           {"y", h.y},
                           {"u", h.u},
                           {"states", std::move(states)}});
    }
  }
  if (opt.store_history) {
    std::ofstream out(opt.history_out);
    if (!out) {
      throw std::runtime_error("cannot open " + opt.history_out +
                               " for writing");
    }
    out << histories.dump() << '\n';
  }
}

void run_stable_sample(double alpha_value, std::int64_t count,
                       std::uint64_t seed) {
  const betacoal::AlphaParam alpha(alpha_value);
  if (count < 0) {
    throw std::invalid_argument("--count must be >= 0");
  }
  const auto spec = betacoal::StableSpec::standard(alpha);
  betacoal::Stream rng(seed);
  std::string buffer;
  for (std::int64_t i = 0; i < count; ++i) {
    buffer += format_real(betacoal::sample_stable(spec, rng));
    buffer += '\n';
    if (buffer.size() > (1u << 16)) {
      std::cout << buffer;
      buffer.clear();
    }
  }
  std::cout << buffer;
}

void run_constants(double alpha_value) {
  const betacoal::AlphaParam alpha(alpha_value);
  const auto c = betacoal::limit_constants(alpha);
  const double total_scale = betacoal::total_limit_scale(alpha);
  nlohmann::json out = {
      {"alpha", alpha_value},
      {"c1", c.c1},
      {"c2", c.c2},
      {"c1_prime", c.c1_prime},
      {"c2_prime", c.c2_prime},
      {"gamma", c.gamma},
      {"alpha0", c.alpha0},
      {"stable_scale", betacoal::stable_scale(alpha)},
      {"tau_limit_scale", betacoal::tau_limit_scale(alpha)},
      {"total_length_regime",
       std::string(betacoal::regime_name(betacoal::total_length_regime(alpha)))},
  };
  out["total_limit_scale"] =
      std::isnan(total_scale) ? nlohmann::json(nullptr) : nlohmann::json(total_scale);
  std::cout << out.dump(1) << '\n';
}

struct ExperimentOptions {
  std::string id;
  double alpha = 1.5;
  std::int64_t n = 1000;
  std::vector<std::int64_t> n_grid;
  std::int64_t reps = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string out;
  std::string format = "csv";
  std::string storage;
  std::int64_t reference_samples = 100000;
};

void run_experiment_command(const ExperimentOptions& opt) {
  betacoal::ExperimentConfig config;
  const auto id = betacoal::parse_experiment(opt.id);
  if (!id) {
    throw std::invalid_argument("unknown experiment '" + opt.id + "'");
  }
  config.id = *id;
  config.alpha = opt.alpha;
  config.n_grid = opt.n_grid.empty() ? std::vector<std::int64_t>{opt.n}
                                     : opt.n_grid;
  config.replicates = opt.reps;
  config.master_seed = opt.seed;
  config.workers = opt.workers;
  config.output_path = opt.out;
  const auto format = betacoal::parse_format(opt.format);
  if (!format) {
    throw std::invalid_argument("unknown format '" + opt.format + "'");
  }
  config.format = *format;
  if (opt.storage == "trajectory") {
    config.storage = betacoal::StoragePolicy::trajectory;
  } else if (opt.storage == "summary") {
    config.storage = betacoal::StoragePolicy::summary;
  } else if (!opt.storage.empty()) {
    throw std::invalid_argument("unknown storage policy '" + opt.storage + "'");
  }
  config.reference_samples = opt.reference_samples;
  betacoal::apply_environment(config);
  betacoal::validate(config);

  const auto batch = betacoal::run_experiment(config);
  if (config.output_path.empty()) {
    betacoal::emit(batch, config.format, std::cout);
  } else {
    betacoal::emit(batch, config.format,
                   std::filesystem::path(config.output_path));
  }
  for (const auto& level : batch.levels) {
    std::cerr << betacoal::experiment_name(config.id) << " n=" << level.n;
    for (const auto& [name, s] : level.summaries) {
      std::cerr << ' ' << name << ".mean=" << format_real(s.mean);
    }
    for (const auto& [name, v] : level.scalars) {
      std::cerr << ' ' << name << '=' << format_real(v);
    }
    if (level.ks) {
      std::cerr << " ks.D=" << format_real(level.ks->statistic)
                << " ks.p=" << format_real(level.ks->p_value);
    }
    std::cerr << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beta(2-alpha, alpha)-coalescent simulation and limit-law checks"};
  app.require_subcommand(1);

  auto* rates = app.add_subcommand("rates", "Merger rates");
  rates->require_subcommand(1);
  auto* rates_table = rates->add_subcommand("table", "CSV of rates for b blocks");
  double alpha = 1.5;
  std::int64_t b = 2;
  rates_table->add_option("--alpha", alpha)->required();
  rates_table->add_option("--b", b)->required();

  auto* simulate = app.add_subcommand("simulate", "Simulate one coalescent");
  std::int64_t n = 1;
  std::uint64_t seed = 0;
  bool store_trajectory = false;
  simulate->add_option("--n", n)->required();
  simulate->add_option("--alpha", alpha)->required();
  simulate->add_option("--seed", seed)->required();
  simulate->add_flag("--store-trajectory", store_trajectory,
                     "Include x, u, dt and y arrays");

  auto* oracle = app.add_subcommand("oracle", "Brute-force partition simulation");
  OracleOptions oracle_opt;
  oracle->add_option("--n", oracle_opt.n)->required();
  oracle->add_option("--alpha", oracle_opt.alpha)->required();
  oracle->add_option("--reps", oracle_opt.reps)->required();
  oracle->add_option("--seed", oracle_opt.seed)->required();
  oracle->add_flag("--store-history", oracle_opt.store_history,
                   "Write full partition histories as JSON");
  oracle->add_option("--history-out", oracle_opt.history_out,
                     "History JSON path")
      ->capture_default_str();

  auto* stable = app.add_subcommand("stable", "Limiting stable law");
  stable->require_subcommand(1);
  auto* stable_sample = stable->add_subcommand("sample", "Draw samples");
  std::int64_t count = 0;
  stable_sample->add_option("--alpha", alpha)->required();
  stable_sample->add_option("--count", count)->required();
  stable_sample->add_option("--seed", seed)->required();

  auto* constants = app.add_subcommand("constants", "Limit constants as JSON");
  constants->add_option("--alpha", alpha)->required();

  auto* experiment = app.add_subcommand("experiment", "Run an experiment");
  ExperimentOptions exp;
  experiment->add_option("id", exp.id,
                         "theorem1|theorem2|theorem3|lemma1|lemma2|fig1|fig2|ratio")
      ->required();
  experiment->add_option("--alpha", exp.alpha)->required();
  auto* n_opt = experiment->add_option("--n", exp.n);
  auto* grid_opt =
      experiment->add_option("--n-grid", exp.n_grid)->delimiter(',');
  n_opt->excludes(grid_opt);
  experiment->add_option("--reps", exp.reps)->required();
  experiment->add_option("--seed", exp.seed)->required();
  experiment->add_option("--workers", exp.workers,
                         "0 = hardware threads; BETACOAL_WORKERS overrides")
      ->capture_default_str();
  experiment->add_option("--out", exp.out, "Output path (default stdout)");
  experiment->add_option("--format", exp.format, "csv|json")
      ->capture_default_str();
  experiment->add_option("--storage", exp.storage, "trajectory|summary");
  experiment->add_option("--reference-samples", exp.reference_samples)
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*rates_table) {
      run_rates_table(alpha, b);
    } else if (*simulate) {
      run_simulate(n, alpha, seed, store_trajectory);
    } else if (*oracle) {
      run_oracle(oracle_opt);
    } else if (*stable_sample) {
      run_stable_sample(alpha, count, seed);
    } else if (*constants) {
      run_constants(alpha);
    } else if (*experiment) {
      run_experiment_command(exp);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
