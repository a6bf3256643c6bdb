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

#ifndef BETACOAL_STATS_HPP
#define BETACOAL_STATS_HPP

#include <cstddef>
#include <span>

namespace betacoal {

/// Quantiles use the lower-nearest rule: q(p) = x_(floor(p (N - 1))) on the
/// ascending order statistics x_(0) <= ... <= x_(N-1).
struct SampleSummary {
  std::size_t count = 0;
  double mean = 0.0;
  /// Unbiased (N - 1 denominator); 0 for a single sample.
  double variance = 0.0;
  double standard_error = 0.0;
  double q01 = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double q99 = 0.0;
  double min = 0.0;
  double max = 0.0;

  double iqr() const { return q75 - q25; }
};

/// Throws std::invalid_argument on empty input.
SampleSummary summarize(std::span<const double> samples);

/// Lower-nearest quantile of an ascending-sorted, non-empty sample.
double sorted_quantile(std::span<const double> sorted, double p);

struct KsResult {
  double statistic = 0.0;
  /// Asymptotic Kolmogorov p-value at effective size n m / (n + m).
  /// Approximate; prefer thresholds on `statistic` where precision matters.
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test. Throws on empty input.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

/// Hill estimate of the lower-tail index from the `tail_fraction` most
/// negative samples. Requires at least 100 samples and tail_fraction in
/// (0, 0.5). For light-tailed data the estimate grows without bound as the
/// fraction shrinks.
double tail_index(std::span<const double> samples, double tail_fraction);

/// Pearson correlation coefficient. Throws on size mismatch or fewer than 2
/// samples.
double pearson_correlation(std::span<const double> a, std::span<const double> b);

}  // namespace betacoal

#endif  // BETACOAL_STATS_HPP
