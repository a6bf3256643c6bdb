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

#include "betacoal/rates.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

namespace betacoal {
namespace {

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

void check_block_count(std::int64_t b) {
  if (b < 2) {
    throw std::invalid_argument("block count must be >= 2, got " +
                                std::to_string(b));
  }
}

// C(b,2) lambda_{b,2} from lambda_{m+1,2} / lambda_{m,2} = (m - 2 + alpha) / m.
// The product keeps full relative precision where exp of a log-gamma
// difference loses about eps * lgamma(b).
double pair_weight(std::int64_t b, AlphaParam alpha) {
  const double a = alpha.value();
  double pair_rate = 1.0;
  for (std::int64_t m = 2; m < b; ++m) {
    const auto md = static_cast<double>(m);
    pair_rate *= (md - 2.0 + a) / md;
  }
  const auto bd = static_cast<double>(b);
  return 0.5 * bd * (bd - 1.0) * pair_rate;
}

}  // namespace

AlphaParam::AlphaParam(double alpha) : alpha_(alpha) {
  if (!(alpha > 1.0 && alpha < 2.0)) {
    throw std::invalid_argument("alpha must lie in (1, 2), got " +
                                std::to_string(alpha));
  }
}

double log_lambda_bk(std::int64_t b, std::int64_t k, AlphaParam alpha) {
  check_block_count(b);
  if (k < 2 || k > b) {
    throw std::invalid_argument("merger size must lie in [2, b]");
  }
  const double a = alpha.value();
  const auto kd = static_cast<double>(k);
  const auto rest = static_cast<double>(b - k);
  return log_beta(kd - a, rest + a) - log_beta(2.0 - a, a);
}

double lambda_bk(std::int64_t b, std::int64_t k, AlphaParam alpha) {
  return std::exp(log_lambda_bk(b, k, alpha));
}

double total_rate(std::int64_t b, AlphaParam alpha) {
  check_block_count(b);
  const double a = alpha.value();
  double term = pair_weight(b, alpha);
  CompensatedSum sum;
  sum.add(term);
  for (std::int64_t k = 2; k < b && term > 0.0; ++k) {
    term *= merger_term_ratio(b, k, a);
    sum.add(term);
  }
  return sum.value();
}

double asymptotic_rate(std::int64_t m, AlphaParam alpha) {
  check_block_count(m);
  const double a = alpha.value();
  return std::pow(static_cast<double>(m), a) / (a * std::tgamma(a));
}

MergerRateTable merger_rate_table(std::int64_t b, AlphaParam alpha) {
  check_block_count(b);
  const double a = alpha.value();
  MergerRateTable table;
  table.b = b;
  const auto size = static_cast<std::size_t>(b - 1);
  table.per_subset_rates.reserve(size);
  table.binom_weights.reserve(size);

  double weight = pair_weight(b, alpha);
  CompensatedSum sum;
  for (std::int64_t k = 2; k <= b; ++k) {
    if (k > 2) {
      weight *= merger_term_ratio(b, k - 1, a);
    }
    table.per_subset_rates.push_back(lambda_bk(b, k, alpha));
    table.binom_weights.push_back(weight);
    sum.add(weight);
  }
  table.total_rate = sum.value();
  table.size_pmf.reserve(size);
  for (double w : table.binom_weights) {
    table.size_pmf.push_back(w / table.total_rate);
  }
  return table;
}

MergerRates::MergerRates(AlphaParam alpha, std::int64_t capacity)
    : alpha_(alpha), capacity_(std::max<std::int64_t>(capacity, 2)) {
  const double a = alpha.value();
  const auto size = static_cast<std::size_t>(capacity_ + 1);
  total_.assign(size, 0.0);
  pair_pmf_.assign(size, 0.0);

  // increment = lambda_{b+1} - lambda_b, starting at b = 2 where it is alpha.
  // pair_rate = lambda_{b,2}, with lambda_{b+1,2} / lambda_{b,2} =
  // (b - 2 + alpha) / b.
  double increment = a;
  double pair_rate = 1.0;
  CompensatedSum lambda;
  lambda.add(1.0);
  for (std::int64_t b = 2; b <= capacity_; ++b) {
    const auto bd = static_cast<double>(b);
    total_[b] = lambda.value();
    pair_pmf_[b] = 0.5 * bd * (bd - 1.0) * pair_rate / total_[b];
    lambda.add(increment);
    increment *= (bd + a - 1.0) / bd;
    pair_rate *= (bd - 2.0 + a) / bd;
  }
}

std::int64_t MergerRates::sample_merger_size(std::int64_t b,
                                             Stream& rng) const {
  double p = pair_pmf_.at(b);
  const double u = rng.uniform();
  const double a = alpha_.value();
  double cdf = p;
  std::int64_t k = 2;
  while (u > cdf && k < b) {
    p *= merger_term_ratio(b, k, a);
    ++k;
    cdf += p;
  }
  return k;
}

std::shared_ptr<const MergerRates> shared_rates(AlphaParam alpha,
                                                std::int64_t min_capacity) {
  constexpr std::size_t kMaxEntries = 8;
  constexpr std::int64_t kMinCapacity = 1024;
  static std::mutex mutex;
  static std::vector<std::shared_ptr<const MergerRates>> cache;

  std::lock_guard lock(mutex);
  auto it = std::find_if(cache.begin(), cache.end(), [&](const auto& entry) {
    return entry->alpha() == alpha;
  });
  if (it != cache.end() && (*it)->capacity() >= min_capacity) {
    return *it;
  }
  std::int64_t capacity = std::max(min_capacity, kMinCapacity);
  if (it != cache.end()) {
    capacity = std::max(capacity, 2 * (*it)->capacity());
    cache.erase(it);
  }
  if (cache.size() >= kMaxEntries) {
    cache.erase(cache.begin());
  }
  cache.push_back(std::make_shared<const MergerRates>(alpha, capacity));
  return cache.back();
}

std::int64_t sample_merger_size(std::int64_t b, AlphaParam alpha,
                                Stream& rng) {
  check_block_count(b);
  return shared_rates(alpha, b)->sample_merger_size(b, rng);
}

}  // namespace betacoal
