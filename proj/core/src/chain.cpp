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

#include "betacoal/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace betacoal {

ChainTrajectory simulate_chain(std::int64_t n, const MergerRates& rates,
                               Stream& rng) {
  if (n < 1) {
    throw std::invalid_argument("sample size must be >= 1");
  }
  if (n > rates.capacity()) {
    throw std::invalid_argument("rate table capacity below sample size");
  }
  ChainTrajectory traj;
  traj.n = n;
  traj.alpha = rates.alpha();
  traj.seed = rng.seed();
  traj.x.push_back(n);

  std::int64_t b = n;
  while (b >= 2) {
    traj.dt.push_back(rng.exponential() / rates.total_rate(b));
    const std::int64_t k = rates.sample_merger_size(b, rng);
    traj.u.push_back(k);
    b -= k - 1;
    traj.x.push_back(b);
  }
  traj.tau = static_cast<std::int64_t>(traj.u.size());
  return traj;
}

ChainTrajectory simulate_chain(std::int64_t n, AlphaParam alpha, Stream& rng) {
  if (n < 1) {
    throw std::invalid_argument("sample size must be >= 1");
  }
  return simulate_chain(n, *shared_rates(alpha, n), rng);
}

TauSummary tau_summary(const ChainTrajectory& traj) {
  TauSummary summary;
  summary.tau = traj.tau;
  summary.steps.reserve(traj.u.size());
  for (std::size_t k = 0; k < traj.u.size(); ++k) {
    summary.steps.push_back({traj.x[k], traj.u[k], traj.dt[k]});
    summary.weighted_clock_sum += static_cast<double>(traj.x[k]) * traj.dt[k];
  }
  return summary;
}

double max_block_deviation(const ChainTrajectory& traj) {
  const auto tau = traj.tau;
  const auto n = static_cast<double>(traj.n);
  double worst = 0.0;
  for (std::int64_t j = 1; j <= tau; ++j) {
    const double frac = static_cast<double>(j) / static_cast<double>(tau);
    const double dev = std::abs(static_cast<double>(traj.x[tau - j]) / n - frac);
    worst = std::max(worst, dev);
  }
  return worst;
}

}  // namespace betacoal
