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

#include "betacoal/replicate.hpp"

#include <stdexcept>
#include <utility>

namespace betacoal {

Replicate simulate_replicate(std::int64_t n, const MergerRates& rates,
                             Stream& chain_rng, Stream& thin_rng,
                             StoragePolicy policy) {
  if (n < 1) {
    throw std::invalid_argument("sample size must be >= 1");
  }
  Replicate rep;
  rep.n = n;
  if (policy == StoragePolicy::trajectory) {
    ChainTrajectory chain = simulate_chain(n, rates, chain_rng);
    ExternalTrajectory ext = thin_external(chain, thin_rng);
    rep.tau = chain.tau;
    rep.L = ext.L;
    rep.ell = ext.ell;
    rep.chain = std::move(chain);
    rep.external = std::move(ext);
    return rep;
  }

  if (n > rates.capacity()) {
    throw std::invalid_argument("rate table capacity below sample size");
  }
  std::int64_t b = n;
  std::int64_t y = n;
  while (b >= 2) {
    const double dt = chain_rng.exponential() / rates.total_rate(b);
    const std::int64_t k = rates.sample_merger_size(b, chain_rng);
    rep.L += static_cast<double>(b) * dt;
    rep.ell += static_cast<double>(y) * dt;
    y -= sample_hypergeometric(b, y, k, thin_rng);
    b -= k - 1;
    ++rep.tau;
  }
  return rep;
}

Replicate simulate_replicate(std::int64_t n, AlphaParam alpha,
                             std::uint64_t replicate_seed,
                             StoragePolicy policy) {
  if (n < 1) {
    throw std::invalid_argument("sample size must be >= 1");
  }
  Stream chain_rng = lane_stream(replicate_seed, Lane::chain);
  Stream thin_rng = lane_stream(replicate_seed, Lane::thinning);
  return simulate_replicate(n, *shared_rates(alpha, n), chain_rng, thin_rng,
                            policy);
}

}  // namespace betacoal
