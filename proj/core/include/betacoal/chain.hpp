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

#ifndef BETACOAL_CHAIN_HPP
#define BETACOAL_CHAIN_HPP

#include <cstdint>
#include <vector>

#include "betacoal/random.hpp"
#include "betacoal/rates.hpp"

namespace betacoal {

/// One realization of the block-counting chain.
///
/// x = (X_0, ..., X_tau) with X_0 = n and X_tau = 1; u = (U_1, ..., U_tau)
/// with X_k = X_{k-1} - U_k + 1; dt[k] is the holding time in state X_k,
/// k = 0..tau-1.
struct ChainTrajectory {
  std::int64_t n = 1;
  AlphaParam alpha{1.5};
  std::vector<std::int64_t> x;
  std::vector<std::int64_t> u;
  std::vector<double> dt;
  std::int64_t tau = 0;
  std::uint64_t seed = 0;
};

/// Simulate the chain: in state b >= 2 wait W / lambda_b with W standard
/// exponential, then merge k blocks with k drawn from the merger-size pmf.
/// Both draws come from `rng`, holding time first.
ChainTrajectory simulate_chain(std::int64_t n, const MergerRates& rates,
                               Stream& rng);
ChainTrajectory simulate_chain(std::int64_t n, AlphaParam alpha, Stream& rng);

struct StepRecord {
  std::int64_t blocks = 0;
  std::int64_t merger_size = 0;
  double holding_time = 0.0;
};

struct TauSummary {
  std::int64_t tau = 0;
  /// sum_k X_k dt_k, the total branch length.
  double weighted_clock_sum = 0.0;
  std::vector<StepRecord> steps;
};

TauSummary tau_summary(const ChainTrajectory& traj);

/// max over 1 <= j <= tau of |X_{tau-j} / n - j / tau|. Zero when tau = 0.
double max_block_deviation(const ChainTrajectory& traj);

}  // namespace betacoal

#endif  // BETACOAL_CHAIN_HPP
