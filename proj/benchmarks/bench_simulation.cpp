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

#include <benchmark/benchmark.h>

#include "betacoal/chain.hpp"
#include "betacoal/external.hpp"
#include "betacoal/rates.hpp"
#include "betacoal/replicate.hpp"
#include "betacoal/stable_limits.hpp"

namespace {

using betacoal::AlphaParam;
using betacoal::Stream;

void BM_SimulateSummary(benchmark::State& state) {
  const auto n = state.range(0);
  const auto rates = betacoal::shared_rates(AlphaParam(1.5), n);
  Stream chain_rng(1);
  Stream thin_rng(2);
  std::int64_t steps = 0;
  for (auto _ : state) {
    auto rep = betacoal::simulate_replicate(
        n, *rates, chain_rng, thin_rng, betacoal::StoragePolicy::summary);
    steps += rep.tau;
    benchmark::DoNotOptimize(rep.ell);
  }
  state.SetItemsProcessed(steps);
}
BENCHMARK(BM_SimulateSummary)->RangeMultiplier(10)->Range(1000, 1000000)
    ->Unit(benchmark::kMillisecond);

void BM_SimulateChainOnly(benchmark::State& state) {
  const auto n = state.range(0);
  const auto rates = betacoal::shared_rates(AlphaParam(1.5), n);
  Stream rng(3);
  std::int64_t steps = 0;
  for (auto _ : state) {
    auto chain = betacoal::simulate_chain(n, *rates, rng);
    steps += chain.tau;
    benchmark::DoNotOptimize(chain.x.data());
  }
  state.SetItemsProcessed(steps);
}
BENCHMARK(BM_SimulateChainOnly)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_MergerSize(benchmark::State& state) {
  const auto b = state.range(0);
  const auto rates = betacoal::shared_rates(AlphaParam(1.5), b);
  Stream rng(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rates->sample_merger_size(b, rng));
  }
}
BENCHMARK(BM_MergerSize)->Arg(10)->Arg(1000)->Arg(1000000);

void BM_Hypergeometric(benchmark::State& state) {
  const auto population = state.range(0);
  const auto marked = state.range(1);
  const auto draws = state.range(2);
  Stream rng(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        betacoal::sample_hypergeometric(population, marked, draws, rng));
  }
}
BENCHMARK(BM_Hypergeometric)
    ->Args({1000, 400, 2})
    ->Args({100000, 40000, 3})
    ->Args({1000, 400, 100})
    ->Args({1000000, 400000, 50000});

void BM_Stable(benchmark::State& state) {
  const auto spec = betacoal::StableSpec::standard(AlphaParam(1.5));
  Stream rng(6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(betacoal::sample_stable(spec, rng));
  }
}
BENCHMARK(BM_Stable);

void BM_RateTable(benchmark::State& state) {
  for (auto _ : state) {
    betacoal::MergerRates rates(AlphaParam(1.5), state.range(0));
    benchmark::DoNotOptimize(rates.total_rate(state.range(0)));
  }
}
BENCHMARK(BM_RateTable)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
