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

#include "betacoal/stable_limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace betacoal {
namespace {

constexpr double kGoldenRatio = std::numbers::phi;

void check_sample_size(std::int64_t n) {
  if (n < 2) {
    throw std::invalid_argument("sample size must be >= 2");
  }
}

}  // namespace

LimitConstants limit_constants(AlphaParam alpha) {
  const double a = alpha.value();
  const double gamma_a = std::tgamma(a);
  LimitConstants c;
  c.c1 = a * (a - 1.0) * gamma_a;
  c.c2 = a * (2.0 - a) * std::pow(a - 1.0, 1.0 / a + 1.0) * gamma_a /
         std::pow(std::tgamma(2.0 - a), 1.0 / a);
  c.c1_prime = c.c1 / (2.0 - a);
  c.c2_prime = c.c2 / (2.0 - a);
  c.gamma = alpha.gamma();
  c.alpha0 = kGoldenRatio;
  return c;
}

double stable_scale(AlphaParam alpha) {
  const double a = alpha.value();
  const double tail = std::tgamma(2.0 - a) *
                      std::cos(std::numbers::pi * a / 2.0) / (1.0 - a);
  return std::pow(tail, 1.0 / a);
}

double sample_stable(const StableSpec& spec, Stream& rng) {
  const double a = spec.alpha.value();
  const double half_pi = std::numbers::pi / 2.0;
  const double v = std::numbers::pi * (rng.uniform() - 0.5);
  const double w = rng.exponential();
  const double t = StableSpec::skew * std::tan(half_pi * a);
  const double b = std::atan(t) / a;
  const double s = std::pow(1.0 + t * t, 1.0 / (2.0 * a));
  const double x = s * std::sin(a * (v + b)) / std::pow(std::cos(v), 1.0 / a) *
                   std::pow(std::cos(v - a * (v + b)) / w, (1.0 - a) / a);
  return spec.scale * x;
}

double normalize_tau(std::int64_t tau, std::int64_t n, AlphaParam alpha) {
  check_sample_size(n);
  const auto nd = static_cast<double>(n);
  return (static_cast<double>(tau) - nd / alpha.gamma()) /
         std::pow(nd, 1.0 / alpha.value());
}

double tau_limit_scale(AlphaParam alpha) {
  const double a = alpha.value();
  return 1.0 / (std::pow(alpha.gamma(), 1.0 / a + 1.0) *
                std::pow(std::tgamma(2.0 - a), 1.0 / a));
}

double normalize_external(double ell, std::int64_t n, AlphaParam alpha) {
  check_sample_size(n);
  const double a = alpha.value();
  const auto nd = static_cast<double>(n);
  const LimitConstants c = limit_constants(alpha);
  return (ell - c.c1 * std::pow(nd, 2.0 - a)) / std::pow(nd, 1.0 / a + 1.0 - a);
}

std::string_view regime_name(Regime regime) {
  switch (regime) {
    case Regime::fluctuating:
      return "i";
    case Regime::critical:
      return "ii";
    case Regime::bounded:
      return "iii";
  }
  return "?";
}

Regime total_length_regime(AlphaParam alpha) {
  const double a = alpha.value();
  if (a < kGoldenRatio) {
    return Regime::fluctuating;
  }
  if (a == kGoldenRatio) {
    return Regime::critical;
  }
  return Regime::bounded;
}

NormalizedTotal normalize_total(double L, std::int64_t n, AlphaParam alpha) {
  check_sample_size(n);
  const double a = alpha.value();
  const auto nd = static_cast<double>(n);
  const double centered =
      L - limit_constants(alpha).c1_prime * std::pow(nd, 2.0 - a);
  NormalizedTotal out;
  out.regime = total_length_regime(alpha);
  switch (out.regime) {
    case Regime::fluctuating:
      out.value = centered / std::pow(nd, 1.0 / a + 1.0 - a);
      break;
    case Regime::critical:
      out.value = centered / std::pow(std::log(nd), 1.0 / a);
      break;
    case Regime::bounded:
      out.value = centered;
      break;
  }
  return out;
}

double total_limit_scale(AlphaParam alpha) {
  const double a = alpha.value();
  const double c2p = limit_constants(alpha).c2_prime;
  switch (total_length_regime(alpha)) {
    case Regime::fluctuating:
      return c2p / std::pow(1.0 + a - a * a, 1.0 / a);
    case Regime::critical:
      return c2p;
    case Regime::bounded:
      break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double external_residual(double ell, std::int64_t tau, AlphaParam alpha) {
  const double a = alpha.value();
  return ell - a * std::tgamma(a) * std::pow(a - 1.0, a - 1.0) *
                   std::pow(static_cast<double>(tau), 2.0 - a);
}

double external_residual_exponent(AlphaParam alpha) {
  const double a = alpha.value();
  return std::max(2.0 / a - a, 1.5 - a);
}

}  // namespace betacoal
