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

#include "betacoal/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace betacoal {

double sorted_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) {
    throw std::invalid_argument("quantile of empty sample");
  }
  const auto last = static_cast<double>(sorted.size() - 1);
  const auto index = static_cast<std::size_t>(std::floor(p * last));
  return sorted[std::min(index, sorted.size() - 1)];
}

SampleSummary summarize(std::span<const double> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("cannot summarize an empty sample");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());

  SampleSummary s;
  s.count = sorted.size();
  // Two-pass mean and variance over the sorted copy, so the result does not
  // depend on the input order.
  double sum = 0.0;
  for (double x : sorted) {
    sum += x;
  }
  s.min = sorted.front();
  s.max = sorted.back();
  s.mean = std::clamp(sum / static_cast<double>(s.count), s.min, s.max);
  if (s.count > 1) {
    double ss = 0.0;
    for (double x : sorted) {
      ss += (x - s.mean) * (x - s.mean);
    }
    s.variance = ss / static_cast<double>(s.count - 1);
  }
  s.standard_error = std::sqrt(s.variance / static_cast<double>(s.count));
  s.q01 = sorted_quantile(sorted, 0.01);
  s.q25 = sorted_quantile(sorted, 0.25);
  s.median = sorted_quantile(sorted, 0.50);
  s.q75 = sorted_quantile(sorted, 0.75);
  s.q99 = sorted_quantile(sorted, 0.99);
  return s;
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) {
    return 1.0;
  }
  constexpr int kTerms = 100;
  if (lambda < 0.5) {
    // Theta-function form of the CDF; the alternating series converges
    // too slowly here.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double cdf = 0.0;
    for (int j = 1; j <= kTerms; ++j) {
      const double odd = 2.0 * j - 1.0;
      cdf += std::exp(-odd * odd * pi2 / (8.0 * lambda * lambda));
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= kTerms; ++j) {
    sum += sign * std::exp(-2.0 * j * j * lambda * lambda);
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("KS test needs two non-empty samples");
  }
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());

  const auto na = static_cast<double>(sa.size());
  const auto nb = static_cast<double>(sb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == x) {
      ++i;
    }
    while (j < sb.size() && sb[j] == x) {
      ++j;
    }
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }

  KsResult result;
  result.statistic = d;
  const double effective = na * nb / (na + nb);
  result.p_value = kolmogorov_survival(std::sqrt(effective) * d);
  return result;
}

double tail_index(std::span<const double> samples, double tail_fraction) {
  if (samples.size() < 100) {
    throw std::invalid_argument("tail_index needs at least 100 samples");
  }
  if (!(tail_fraction > 0.0 && tail_fraction < 0.5)) {
    throw std::invalid_argument("tail fraction must lie in (0, 0.5)");
  }
  // Lower tail of x is the upper tail of -x.
  std::vector<double> neg;
  neg.reserve(samples.size());
  for (double x : samples) {
    neg.push_back(-x);
  }
  const auto k = std::max<std::size_t>(
      1, static_cast<std::size_t>(tail_fraction *
                                  static_cast<double>(samples.size())));
  std::nth_element(neg.begin(), neg.begin() + k, neg.end(),
                   std::greater<double>());
  const double threshold = neg[k];
  if (!(threshold > 0.0)) {
    throw std::invalid_argument(
        "tail threshold is not negative; lower tail too thin for a Hill "
        "estimate");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sum += std::log(neg[i] / threshold);
  }
  return static_cast<double>(k) / sum;
}

double pearson_correlation(std::span<const double> a,
                           std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw std::invalid_argument(
        "correlation needs two equally sized samples of size >= 2");
  }
  const auto n = static_cast<double>(a.size());
  double ma = 0.0;
  double mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace betacoal
