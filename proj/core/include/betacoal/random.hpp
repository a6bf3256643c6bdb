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

#ifndef BETACOAL_RANDOM_HPP
#define BETACOAL_RANDOM_HPP

#include <cstdint>
#include <random>

namespace betacoal {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of substream `index` under `master`.
///
/// derive_seed(m, i) = mix64(mix64(m) ^ mix64(i ^ 0x5851f42d4c957f2d)).
/// Depends only on (master, index), never on scheduling, so any replicate
/// can be regenerated in isolation and results do not depend on the number
/// of worker threads.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::uint64_t index) noexcept {
  return mix64(mix64(master) ^ mix64(index ^ 0x5851f42d4c957f2dULL));
}

/// Random stream used by every sampler in the library.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the C++ standard.
/// Uniform and exponential variates are produced here rather than through
/// <random> distributions, whose algorithms are implementation-defined, so
/// outputs are bit-identical across standard libraries.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

  result_type operator()() { return engine_(); }

  /// Uniform on the open interval (0, 1), 53 random bits.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard exponential.
  double exponential();

  /// Unbiased uniform integer in [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

/// Lanes of a replicate seed. Each lane is an independent stream.
enum class Lane : std::uint64_t {
  chain = 1,
  thinning = 2,
  oracle = 3,
  reference = 4,
};

inline Stream lane_stream(std::uint64_t replicate_seed, Lane lane) {
  return Stream(derive_seed(replicate_seed, static_cast<std::uint64_t>(lane)));
}

}  // namespace betacoal

#endif  // BETACOAL_RANDOM_HPP
