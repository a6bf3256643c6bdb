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

#ifndef BETACOAL_EXTERNAL_HPP
#define BETACOAL_EXTERNAL_HPP

#include <cstdint>
#include <vector>

#include "betacoal/chain.hpp"
#include "betacoal/random.hpp"

namespace betacoal {

/// Exact draw from Hyp(population, marked, draws): the number of marked items
/// among `draws` items taken without replacement from `population` items of
/// which `marked` are marked. Argument order follows Hyp(X_{k-1}, Y_{k-1},
/// U_k) in the thinning recursion.
///
/// Throws std::invalid_argument unless 0 <= marked <= population and
/// 0 <= draws <= population. Degenerate laws consume no randomness.
std::int64_t sample_hypergeometric(std::int64_t population, std::int64_t marked,
                                   std::int64_t draws, Stream& rng);

namespace detail {

/// ln(k!) for k >= 0.
double log_factorial(std::int64_t k);

// Both samplers assume 0 < draws <= marked <= population / 2.

/// Inversion walking up from zero; for a handful of draws.
std::int64_t hypergeometric_small(std::int64_t population, std::int64_t marked,
                                  std::int64_t draws, Stream& rng);

/// Chop-down inversion starting at the mode. Work grows with the standard
/// deviation.
std::int64_t hypergeometric_inversion(std::int64_t population,
                                      std::int64_t marked, std::int64_t draws,
                                      Stream& rng);

/// Stadlober's ratio-of-uniforms rejection sampler. Work is bounded
/// independently of the parameters.
std::int64_t hypergeometric_ratio_of_uniforms(std::int64_t population,
                                              std::int64_t marked,
                                              std::int64_t draws, Stream& rng);

}  // namespace detail

/// Counts of external branches coupled to a chain.
///
/// y = (Y_0, ..., Y_tau) with Y_0 = n and Y_tau = 0; h = (H_1, ..., H_tau)
/// with Y_k = Y_{k-1} - H_k. Lengths are in coalescent time units.
struct ExternalTrajectory {
  std::vector<std::int64_t> y;
  std::vector<std::int64_t> h;
  double ell = 0.0;
  double L = 0.0;
};

/// Draw H_k ~ Hyp(X_{k-1}, Y_{k-1}, U_k) for k = 1..tau in order.
ExternalTrajectory thin_external(const ChainTrajectory& chain, Stream& rng);

struct BranchLengths {
  /// L_n = sum_k X_k dt_k.
  double total = 0.0;
  /// ell_n = sum_k Y_k dt_k.
  double external = 0.0;
};

BranchLengths branch_lengths(const ChainTrajectory& chain,
                             const ExternalTrajectory& ext);

/// prod_{i=j+1}^{k} (1 - 1/X_i), evaluated in log space.
/// Requires 0 <= j <= k <= tau - 1.
double pi_product(const ChainTrajectory& chain, std::int64_t j, std::int64_t k);

/// E[Y_k | X] = X_k * Pi_0^k for k = 0..tau-1.
std::vector<double> conditional_expected_externals(const ChainTrajectory& chain);

/// max over 1 <= j <= tau of |Y_{tau-j} / n - (j / tau)^alpha|.
double max_external_deviation(const ChainTrajectory& chain,
                              const ExternalTrajectory& ext);

}  // namespace betacoal

#endif  // BETACOAL_EXTERNAL_HPP
