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

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "betacoal/external.hpp"

namespace betacoal {
namespace detail {

// Above this variance the inversion walk gets long enough that rejection
// is cheaper.
constexpr double kInversionMaxVariance = 64.0;

// At or below this many draws, inversion starts at zero where the pmf is a
// short product and needs no logarithms.
constexpr std::int64_t kSmallDraws = 16;

namespace {

constexpr std::int64_t kTableSize = 1024;

// 8/e and 3 - sqrt(12/e): hat constants of the ratio-of-uniforms method.
constexpr double kHatScale = 2.943035529371538573;
constexpr double kHatShift = 0.8989161620588987408;

const std::array<double, kTableSize>& log_factorial_table() {
  static const auto table = [] {
    std::array<double, kTableSize> t{};
    for (std::int64_t k = 1; k < kTableSize; ++k) {
      t[k] = t[k - 1] + std::log(static_cast<double>(k));
    }
    return t;
  }();
  return table;
}

double log_hyp_kernel(std::int64_t k, std::int64_t rest, std::int64_t marked,
                      std::int64_t draws) {
  return log_factorial(k) + log_factorial(marked - k) +
         log_factorial(draws - k) + log_factorial(rest + k);
}

}  // namespace

double log_factorial(std::int64_t k) {
  if (k < kTableSize) {
    return log_factorial_table()[k];
  }
  // Stirling series; truncation error below 1e-20 for k >= 1024.
  const auto x = static_cast<double>(k);
  const double r = 1.0 / x;
  const double r2 = r * r;
  return (x + 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) +
         r * (1.0 / 12.0 - r2 * (1.0 / 360.0 - r2 / 1260.0));
}

std::int64_t hypergeometric_inversion(std::int64_t population,
                                      std::int64_t marked, std::int64_t draws,
                                      Stream& rng) {
  const std::int64_t rest = population - marked - draws;
  const std::int64_t mode = (draws + 1) * (marked + 1) / (population + 2);
  const double log_f_mode =
      log_factorial(marked) - log_factorial(mode) -
      log_factorial(marked - mode) + log_factorial(population - marked) -
      log_factorial(draws - mode) - log_factorial(rest + mode) -
      (log_factorial(population) - log_factorial(draws) -
       log_factorial(population - draws));
  const double f_mode = std::exp(log_f_mode);
  const auto m = static_cast<double>(marked);
  const auto n = static_cast<double>(draws);
  const auto l = static_cast<double>(rest);

  for (;;) {
    double u = rng.uniform() - f_mode;
    if (u <= 0.0) {
      return mode;
    }
    std::int64_t lo = mode;
    std::int64_t hi = mode;
    double f_lo = f_mode;
    double f_hi = f_mode;
    while (lo > 0 || hi < draws) {
      if (lo > 0) {
        const auto k = static_cast<double>(lo);
        f_lo *= k * (l + k) / ((m - k + 1.0) * (n - k + 1.0));
        --lo;
        u -= f_lo;
        if (u <= 0.0) {
          return lo;
        }
      }
      if (hi < draws) {
        const auto k = static_cast<double>(hi);
        f_hi *= (m - k) * (n - k) / ((k + 1.0) * (l + k + 1.0));
        ++hi;
        u -= f_hi;
        if (u <= 0.0) {
          return hi;
        }
      }
    }
    // Only reachable through rounding in the pmf sum; draw again.
  }
}

std::int64_t hypergeometric_small(std::int64_t population, std::int64_t marked,
                                  std::int64_t draws, Stream& rng) {
  const auto big_n = static_cast<double>(population);
  const auto m = static_cast<double>(marked);
  const auto n = static_cast<double>(draws);
  const double l = big_n - m - n;
  // f(0) = C(N - m, n) / C(N, n)
  double f0 = 1.0;
  for (std::int64_t i = 0; i < draws; ++i) {
    const auto id = static_cast<double>(i);
    f0 *= (big_n - m - id) / (big_n - id);
  }
  for (;;) {
    double u = rng.uniform() - f0;
    double f = f0;
    std::int64_t k = 0;
    while (u > 0.0 && k < draws) {
      const auto kd = static_cast<double>(k);
      f *= (m - kd) * (n - kd) / ((kd + 1.0) * (l + kd + 1.0));
      ++k;
      u -= f;
    }
    if (u <= 0.0) {
      return k;
    }
  }
}

std::int64_t hypergeometric_ratio_of_uniforms(std::int64_t population,
                                              std::int64_t marked,
                                              std::int64_t draws, Stream& rng) {
  const std::int64_t rest = population - marked - draws;
  const auto big_n = static_cast<double>(population);
  const auto m = static_cast<double>(marked);
  const auto n = static_cast<double>(draws);
  const double mean = n * m / big_n;
  const double variance =
      n * m * (big_n - m) * (big_n - n) / (big_n * big_n * (big_n - 1.0));
  const double width = std::sqrt(kHatScale * (variance + 0.5)) + kHatShift;
  const double center = mean + 0.5;
  const std::int64_t mode = (draws + 1) * (marked + 1) / (population + 2);
  const double log_f_mode = log_hyp_kernel(mode, rest, marked, draws);

  for (;;) {
    const double u = rng.uniform();
    const double x = center + width * (rng.uniform() - 0.5) / u;
    if (x < 0.0 || x >= n + 1.0) {
      continue;
    }
    const auto k = static_cast<std::int64_t>(x);
    // log f(k) / f(mode)
    const double lf = log_f_mode - log_hyp_kernel(k, rest, marked, draws);
    if (u * (4.0 - u) - 3.0 <= lf) {
      return k;
    }
    if (u * (u - lf) > 1.0) {
      continue;
    }
    if (2.0 * std::log(u) <= lf) {
      return k;
    }
  }
}

}  // namespace detail

std::int64_t sample_hypergeometric(std::int64_t population, std::int64_t marked,
                                   std::int64_t draws, Stream& rng) {
  if (population < 0 || marked < 0 || draws < 0 || marked > population ||
      draws > population) {
    throw std::invalid_argument(
        "hypergeometric parameters require 0 <= marked, draws <= population");
  }
  // Reduce to 0 <= n <= m <= N / 2; the result is offset + sign * draw.
  std::int64_t m = marked;
  std::int64_t n = draws;
  std::int64_t sign = 1;
  std::int64_t offset = 0;
  if (m > population / 2) {
    m = population - m;
    sign = -1;
    offset = n;
  }
  if (n > population / 2) {
    n = population - n;
    offset += sign * m;
    sign = -sign;
  }
  if (n > m) {
    std::swap(n, m);
  }
  if (n == 0) {
    return offset;
  }
  if (n <= detail::kSmallDraws) {
    return offset + sign * detail::hypergeometric_small(population, m, n, rng);
  }
  const auto big_n = static_cast<double>(population);
  const double variance = static_cast<double>(n) * static_cast<double>(m) *
                          (big_n - static_cast<double>(m)) *
                          (big_n - static_cast<double>(n)) /
                          (big_n * big_n * (big_n - 1.0));
  const std::int64_t x =
      variance < detail::kInversionMaxVariance
          ? detail::hypergeometric_inversion(population, m, n, rng)
          : detail::hypergeometric_ratio_of_uniforms(population, m, n, rng);
  return offset + sign * x;
}

}  // namespace betacoal
