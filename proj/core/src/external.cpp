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

#include "betacoal/external.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace betacoal {

ExternalTrajectory thin_external(const ChainTrajectory& chain, Stream& rng) {
  if (chain.x.size() != static_cast<std::size_t>(chain.tau + 1) ||
      chain.u.size() != static_cast<std::size_t>(chain.tau)) {
    throw std::invalid_argument("malformed chain trajectory");
  }
  ExternalTrajectory ext;
  ext.y.reserve(chain.x.size());
  ext.h.reserve(chain.u.size());
  ext.y.push_back(chain.n);
  std::int64_t y = chain.n;
  for (std::int64_t k = 1; k <= chain.tau; ++k) {
    const std::int64_t h =
        sample_hypergeometric(chain.x[k - 1], y, chain.u[k - 1], rng);
    y -= h;
    ext.h.push_back(h);
    ext.y.push_back(y);
  }
  const BranchLengths lengths = branch_lengths(chain, ext);
  ext.L = lengths.total;
  ext.ell = lengths.external;
  return ext;
}

BranchLengths branch_lengths(const ChainTrajectory& chain,
                             const ExternalTrajectory& ext) {
  const auto tau = static_cast<std::size_t>(chain.tau);
  if (chain.dt.size() != tau || chain.x.size() != tau + 1 ||
      ext.y.size() != tau + 1) {
    throw std::invalid_argument(
        "chain and external trajectories have mismatched lengths");
  }
  BranchLengths lengths;
  for (std::size_t k = 0; k < tau; ++k) {
    lengths.total += static_cast<double>(chain.x[k]) * chain.dt[k];
    lengths.external += static_cast<double>(ext.y[k]) * chain.dt[k];
  }
  return lengths;
}

double pi_product(const ChainTrajectory& chain, std::int64_t j,
                  std::int64_t k) {
  if (j < 0 || j > k || k > chain.tau - 1) {
    throw std::invalid_argument("pi_product requires 0 <= j <= k <= tau - 1");
  }
  double log_sum = 0.0;
  for (std::int64_t i = j + 1; i <= k; ++i) {
    log_sum += std::log1p(-1.0 / static_cast<double>(chain.x[i]));
  }
  return std::exp(log_sum);
}

std::vector<double> conditional_expected_externals(
    const ChainTrajectory& chain) {
  std::vector<double> expected;
  expected.reserve(static_cast<std::size_t>(chain.tau));
  double log_pi = 0.0;
  for (std::int64_t k = 0; k < chain.tau; ++k) {
    const auto xk = static_cast<double>(chain.x[k]);
    if (k > 0) {
      log_pi += std::log1p(-1.0 / xk);
    }
    expected.push_back(xk * std::exp(log_pi));
  }
  return expected;
}

double max_external_deviation(const ChainTrajectory& chain,
                              const ExternalTrajectory& ext) {
  const auto tau = chain.tau;
  const auto n = static_cast<double>(chain.n);
  const double a = chain.alpha.value();
  double worst = 0.0;
  for (std::int64_t j = 1; j <= tau; ++j) {
    const double frac = static_cast<double>(j) / static_cast<double>(tau);
    const double dev =
        std::abs(static_cast<double>(ext.y[tau - j]) / n - std::pow(frac, a));
    worst = std::max(worst, dev);
  }
  return worst;
}

}  // namespace betacoal
