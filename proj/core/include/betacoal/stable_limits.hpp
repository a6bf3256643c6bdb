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

#ifndef BETACOAL_STABLE_LIMITS_HPP
#define BETACOAL_STABLE_LIMITS_HPP

#include <cstdint>
#include <string_view>

#include "betacoal/random.hpp"
#include "betacoal/rates.hpp"

namespace betacoal {

/// Constants of the limit theorems for external and total length.
struct LimitConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double c1_prime = 0.0;
  double c2_prime = 0.0;
  double gamma = 0.0;
  /// Golden ratio (1 + sqrt 5) / 2, where the total-length regimes switch.
  double alpha0 = 0.0;
};

LimitConstants limit_constants(AlphaParam alpha);

/// Scale sigma of the totally left-skewed stable law S_alpha(sigma, -1, 0)
/// that gives the limit variable mean zero and P(X < -x) ~ x^{-alpha}.
///
/// Parametrization: S_alpha(sigma, beta, mu) of Samorodnitsky and Taqqu, whose
/// tails satisfy x^alpha P(X < -x) -> C_alpha (1 - beta) / 2 sigma^alpha with
/// C_alpha = (1 - alpha) / (Gamma(2 - alpha) cos(pi alpha / 2)). With
/// beta = -1 the condition C_alpha sigma^alpha = 1 gives
///   sigma = (Gamma(2 - alpha) cos(pi alpha / 2) / (1 - alpha))^{1/alpha}.
/// The mean of S_alpha(sigma, beta, mu) is mu for alpha > 1, so mu = 0.
double stable_scale(AlphaParam alpha);

/// A mean-zero, maximally left-skewed alpha-stable law with the given scale.
struct StableSpec {
  AlphaParam alpha;
  double scale;
  static constexpr double skew = -1.0;

  /// The normalized limit variable: left tail constant exactly 1.
  static StableSpec standard(AlphaParam alpha) {
    return {alpha, stable_scale(alpha)};
  }
  /// The law of factor * X for X ~ *this, factor > 0.
  StableSpec scaled(double factor) const { return {alpha, scale * factor}; }
};

/// Chambers-Mallows-Stuck draw (one uniform angle, one exponential).
double sample_stable(const StableSpec& spec, Stream& rng);

/// (tau - n / gamma) / n^{1/alpha}.
double normalize_tau(std::int64_t tau, std::int64_t n, AlphaParam alpha);
/// Limit of normalize_tau is tau_limit_scale * X with X standard:
/// 1 / (gamma^{1/alpha + 1} Gamma(2 - alpha)^{1/alpha}).
double tau_limit_scale(AlphaParam alpha);

/// (ell - c1 n^{2-alpha}) / n^{1/alpha + 1 - alpha}. Limit c2 * X.
double normalize_external(double ell, std::int64_t n, AlphaParam alpha);

enum class Regime {
  /// alpha < alpha0: n^{1/alpha + 1 - alpha} scaling, stable limit.
  fluctuating,
  /// alpha == alpha0: (log n)^{1/alpha} scaling, stable limit.
  critical,
  /// alpha > alpha0: no rescaling, non-degenerate limit of unknown law.
  bounded,
};

std::string_view regime_name(Regime regime);
Regime total_length_regime(AlphaParam alpha);

struct NormalizedTotal {
  double value = 0.0;
  Regime regime = Regime::fluctuating;
};

/// Centre L by c1' n^{2-alpha} and rescale according to the regime.
NormalizedTotal normalize_total(double L, std::int64_t n, AlphaParam alpha);
/// Scale of the stable limit of normalize_total: c2' / (1 + alpha -
/// alpha^2)^{1/alpha} below alpha0, c2' at alpha0. NaN above alpha0.
double total_limit_scale(AlphaParam alpha);

/// ell - alpha Gamma(alpha) (alpha - 1)^{alpha - 1} tau^{2 - alpha}.
double external_residual(double ell, std::int64_t tau, AlphaParam alpha);
/// Exponent max(2/alpha - alpha, 3/2 - alpha) bounding that residual.
double external_residual_exponent(AlphaParam alpha);

}  // namespace betacoal

#endif  // BETACOAL_STABLE_LIMITS_HPP
