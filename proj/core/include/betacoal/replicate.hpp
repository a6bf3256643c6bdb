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

#ifndef BETACOAL_REPLICATE_HPP
#define BETACOAL_REPLICATE_HPP

#include <cstdint>
#include <optional>

#include "betacoal/chain.hpp"
#include "betacoal/external.hpp"
#include "betacoal/rates.hpp"

namespace betacoal {

enum class StoragePolicy {
  /// Keep the full chain and external trajectories.
  trajectory,
  /// Keep only (tau, L, ell); O(1) memory in n.
  summary,
};

/// One coalescent realization: chain, thinning and branch lengths.
struct Replicate {
  std::int64_t n = 1;
  std::int64_t tau = 0;
  double L = 0.0;
  double ell = 0.0;
  std::optional<ChainTrajectory> chain;
  std::optional<ExternalTrajectory> external;
};

/// Simulate one realization. The chain consumes `chain_rng` and the thinning
/// consumes `thin_rng`, so both storage policies give bit-identical
/// (tau, L, ell).
Replicate simulate_replicate(std::int64_t n, const MergerRates& rates,
                             Stream& chain_rng, Stream& thin_rng,
                             StoragePolicy policy);

/// Same, with both streams derived from `replicate_seed` (lanes chain and
/// thinning).
Replicate simulate_replicate(std::int64_t n, AlphaParam alpha,
                             std::uint64_t replicate_seed,
                             StoragePolicy policy);

}  // namespace betacoal

#endif  // BETACOAL_REPLICATE_HPP
