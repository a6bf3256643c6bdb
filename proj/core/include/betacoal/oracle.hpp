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

#ifndef BETACOAL_ORACLE_HPP
#define BETACOAL_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "betacoal/random.hpp"
#include "betacoal/rates.hpp"

namespace betacoal {

/// A partition of {1..n} into blocks, each block holding sorted labels.
/// Blocks are ordered by their smallest label.
struct PartitionState {
  std::vector<std::vector<std::int64_t>> blocks;
  double time = 0.0;
};

/// Number of singleton blocks.
std::int64_t external_count(const PartitionState& state);

struct PartitionHistory {
  std::int64_t n = 1;
  /// Pi_0, ..., Pi_tau when states were stored, otherwise empty.
  std::vector<PartitionState> states;
  std::int64_t tau = 0;
  double L = 0.0;
  double ell = 0.0;
  /// Block counts X_0..X_tau.
  std::vector<std::int64_t> x;
  /// Singleton counts Y_0..Y_tau.
  std::vector<std::int64_t> y;
  /// Merger sizes U_1..U_tau.
  std::vector<std::int64_t> u;
};

/// Brute-force partition-valued simulation, meant as ground truth for small n
/// (up to about 1e3). With b blocks: wait Exp(lambda_b), draw the merger size
/// from the exact rate table, choose a uniformly random subset of that many
/// blocks by partial Fisher-Yates, and merge them. The merged block takes the
/// position of its member with the smallest label.
PartitionHistory simulate_partition(std::int64_t n, AlphaParam alpha,
                                    Stream& rng, bool store_states = true);

}  // namespace betacoal

#endif  // BETACOAL_ORACLE_HPP
