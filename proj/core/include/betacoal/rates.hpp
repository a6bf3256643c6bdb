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

#ifndef BETACOAL_RATES_HPP
#define BETACOAL_RATES_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "betacoal/random.hpp"

namespace betacoal {

/// Coalescent parameter alpha, restricted to the open interval (1, 2).
class AlphaParam {
 public:
  /// Throws std::invalid_argument unless 1 < alpha < 2.
  explicit AlphaParam(double alpha);

  double value() const noexcept { return alpha_; }
  /// gamma = 1 / (alpha - 1).
  double gamma() const noexcept { return 1.0 / (alpha_ - 1.0); }

  friend bool operator==(AlphaParam, AlphaParam) = default;

 private:
  double alpha_;
};

/// Rate at which one specific k-subset of b blocks merges:
/// B(k - alpha, b - k + alpha) / B(2 - alpha, alpha).
double lambda_bk(std::int64_t b, std::int64_t k, AlphaParam alpha);
/// log lambda_bk; finite where lambda_bk underflows (b beyond about 1000 with
/// k near b / 2).
double log_lambda_bk(std::int64_t b, std::int64_t k, AlphaParam alpha);

/// Total merger rate among b blocks, summing C(b,k) lambda_bk over all k.
/// Exact O(b) summation.
double total_rate(std::int64_t b, AlphaParam alpha);

/// Leading term m^alpha / (alpha Gamma(alpha)) of the total rate.
double asymptotic_rate(std::int64_t m, AlphaParam alpha);

/// Ratio C(b,k+1) lambda_{b,k+1} / (C(b,k) lambda_{b,k}).
inline double merger_term_ratio(std::int64_t b, std::int64_t k,
                                double alpha) noexcept {
  const auto bk = static_cast<double>(b - k);
  const auto kd = static_cast<double>(k);
  return bk * (kd - alpha) / ((kd + 1.0) * (bk - 1.0 + alpha));
}

/// All merger rates for a fixed block count b.
struct MergerRateTable {
  std::int64_t b = 0;
  /// per_subset_rates[k - 2] = lambda_{b,k}, k = 2..b.
  std::vector<double> per_subset_rates;
  /// binom_weights[k - 2] = C(b,k) lambda_{b,k}.
  std::vector<double> binom_weights;
  double total_rate = 0.0;
  /// size_pmf[k - 2] = C(b,k) lambda_{b,k} / total_rate.
  std::vector<double> size_pmf;

  double per_subset(std::int64_t k) const { return per_subset_rates.at(k - 2); }
  double pmf(std::int64_t k) const { return size_pmf.at(k - 2); }
};

MergerRateTable merger_rate_table(std::int64_t b, AlphaParam alpha);

/// Precomputed total rates and pair-merger probabilities for every block
/// count up to a capacity, for one alpha. Immutable after construction and
/// safe to share between threads.
///
/// Total rates come from the increment identity
///   lambda_{b+1} - lambda_b = Gamma(b + alpha - 1) / (Gamma(b) Gamma(alpha)),
/// with lambda_2 = 1, so building the table costs O(capacity).
class MergerRates {
 public:
  MergerRates(AlphaParam alpha, std::int64_t capacity);

  AlphaParam alpha() const noexcept { return alpha_; }
  std::int64_t capacity() const noexcept { return capacity_; }

  double total_rate(std::int64_t b) const { return total_.at(b); }
  /// Probability that a merger among b blocks involves exactly two.
  double pair_probability(std::int64_t b) const { return pair_pmf_.at(b); }

  /// Draw a merger size by inverse transform, walking k = 2, 3, ... with the
  /// ratio recurrence. Expected work is O(1) because the pmf has a finite
  /// mean.
  std::int64_t sample_merger_size(std::int64_t b, Stream& rng) const;

 private:
  AlphaParam alpha_;
  std::int64_t capacity_;
  std::vector<double> total_;
  std::vector<double> pair_pmf_;
};

/// Shared table for alpha covering at least `min_capacity` blocks. Tables are
/// memoized in a small process-wide cache guarded by a mutex; a table whose
/// capacity is too small is rebuilt larger.
std::shared_ptr<const MergerRates> shared_rates(AlphaParam alpha,
                                                std::int64_t min_capacity);

/// Draw a merger size for b blocks using the shared cache.
std::int64_t sample_merger_size(std::int64_t b, AlphaParam alpha, Stream& rng);

}  // namespace betacoal

#endif  // BETACOAL_RATES_HPP
