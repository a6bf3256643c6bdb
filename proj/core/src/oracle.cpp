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

#include "betacoal/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace betacoal {

std::int64_t external_count(const PartitionState& state) {
  return std::count_if(state.blocks.begin(), state.blocks.end(),
                       [](const auto& block) { return block.size() == 1; });
}

PartitionHistory simulate_partition(std::int64_t n, AlphaParam alpha,
                                    Stream& rng, bool store_states) {
  if (n < 1) {
    throw std::invalid_argument("sample size must be >= 1");
  }
  std::vector<MergerRateTable> tables;
  tables.reserve(static_cast<std::size_t>(std::max<std::int64_t>(n - 1, 0)));
  for (std::int64_t b = 2; b <= n; ++b) {
    tables.push_back(merger_rate_table(b, alpha));
  }

  PartitionState state;
  state.blocks.reserve(static_cast<std::size_t>(n));
  for (std::int64_t label = 1; label <= n; ++label) {
    state.blocks.push_back({label});
  }

  PartitionHistory history;
  history.n = n;
  history.x.push_back(n);
  history.y.push_back(n);
  if (store_states) {
    history.states.push_back(state);
  }

  std::vector<std::size_t> index;
  std::int64_t singletons = n;
  while (state.blocks.size() >= 2) {
    const auto b = static_cast<std::int64_t>(state.blocks.size());
    const MergerRateTable& table = tables[static_cast<std::size_t>(b - 2)];

    const double dt = rng.exponential() / table.total_rate;
    history.L += static_cast<double>(b) * dt;
    history.ell += static_cast<double>(singletons) * dt;
    state.time += dt;

    const double u = rng.uniform();
    double cdf = 0.0;
    std::int64_t k = b;
    for (std::int64_t size = 2; size < b; ++size) {
      cdf += table.pmf(size);
      if (u <= cdf) {
        k = size;
        break;
      }
    }

    index.resize(static_cast<std::size_t>(b));
    std::iota(index.begin(), index.end(), std::size_t{0});
    for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) {
      const auto j = i + rng.below(static_cast<std::uint64_t>(b) - i);
      std::swap(index[i], index[j]);
    }
    std::sort(index.begin(), index.begin() + k);

    auto& target = state.blocks[index[0]];
    for (std::int64_t i = 1; i < k; ++i) {
      const auto& source = state.blocks[index[i]];
      target.insert(target.end(), source.begin(), source.end());
    }
    std::sort(target.begin(), target.end());
    for (std::int64_t i = k - 1; i >= 1; --i) {
      state.blocks.erase(state.blocks.begin() +
                         static_cast<std::ptrdiff_t>(index[i]));
    }

    singletons = external_count(state);
    history.u.push_back(k);
    history.x.push_back(static_cast<std::int64_t>(state.blocks.size()));
    history.y.push_back(singletons);
    if (store_states) {
      history.states.push_back(state);
    }
  }
  history.tau = static_cast<std::int64_t>(history.u.size());
  return history;
}

}  // namespace betacoal
