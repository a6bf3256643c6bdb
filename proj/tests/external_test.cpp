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
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "betacoal/chain.hpp"
#include "betacoal/random.hpp"
#include "betacoal/rates.hpp"
#include "betacoal/replicate.hpp"
#include "test_support.hpp"

namespace betacoal {
namespace {

ChainTrajectory hand_chain() {
  // 5 -> 3 -> 2 -> 1 with merger sizes 3, 2, 2.
  ChainTrajectory t;
  t.n = 5;
  t.x = {5, 3, 2, 1};
  t.u = {3, 2, 2};
  t.dt = {0.5, 0.25, 1.0};
  t.tau = 3;
  return t;
}

TEST(External, StructuralInvariantsHoldOnRandomInstances) {
  Stream meta(77);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::int64_t>(1 + meta.below(3000));
    const double a = 1.02 + 0.96 * meta.uniform();
    Stream chain_rng(meta());
    Stream thin_rng(meta());
    const auto chain = simulate_chain(n, AlphaParam(a), chain_rng);
    const auto ext = thin_external(chain, thin_rng);
    ASSERT_EQ(ext.y.size(), chain.x.size());
    ASSERT_EQ(ext.h.size(), chain.u.size());
    ASSERT_EQ(ext.y.front(), n);
    if (n >= 2) {
      ASSERT_EQ(ext.y.back(), 0);
    }
    for (std::int64_t k = 1; k <= chain.tau; ++k) {
      ASSERT_GE(ext.h[k - 1], 0);
      ASSERT_LE(ext.h[k - 1], std::min(ext.y[k - 1], chain.u[k - 1]));
      ASSERT_EQ(ext.y[k], ext.y[k - 1] - ext.h[k - 1]);
      ASSERT_LE(ext.y[k], chain.x[k]);
    }
    ASSERT_GE(ext.ell, 0.0);
    ASSERT_LE(ext.ell, ext.L);
    if (n == 2) {
      ASSERT_EQ(ext.ell, ext.L);
    }
  }
}

TEST(External, TwoLeavesHaveEqualLengths) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto rep =
        simulate_replicate(2, AlphaParam(1.4), s, StoragePolicy::summary);
    EXPECT_EQ(rep.tau, 1);
    EXPECT_EQ(rep.ell, rep.L);
    EXPECT_GT(rep.L, 0.0);
  }
}

TEST(External, BranchLengthsOfHandChain) {
  const auto chain = hand_chain();
  ExternalTrajectory ext;
  ext.y = {5, 2, 1, 0};
  const auto lengths = branch_lengths(chain, ext);
  EXPECT_DOUBLE_EQ(lengths.total, 5 * 0.5 + 3 * 0.25 + 2 * 1.0);
  EXPECT_DOUBLE_EQ(lengths.external, 5 * 0.5 + 2 * 0.25 + 1 * 1.0);
  ext.y = {5, 2};
  EXPECT_THROW(branch_lengths(chain, ext), std::invalid_argument);
}

TEST(External, PiProductOfHandChain) {
  const auto chain = hand_chain();
  EXPECT_DOUBLE_EQ(pi_product(chain, 0, 0), 1.0);
  EXPECT_DOUBLE_EQ(pi_product(chain, 1, 1), 1.0);
  EXPECT_NEAR(pi_product(chain, 0, 1), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(pi_product(chain, 0, 2), 2.0 / 3.0 * 0.5, 1e-15);
  EXPECT_NEAR(pi_product(chain, 1, 2), 0.5, 1e-15);
  EXPECT_THROW(pi_product(chain, 0, 3), std::invalid_argument);
  EXPECT_THROW(pi_product(chain, 2, 1), std::invalid_argument);
  EXPECT_THROW(pi_product(chain, -1, 1), std::invalid_argument);
  const auto expected = conditional_expected_externals(chain);
  ASSERT_EQ(expected.size(), 3u);
  EXPECT_NEAR(expected[0], 5.0, 1e-15);
  EXPECT_NEAR(expected[1], 3.0 * 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(expected[2], 2.0 * 2.0 / 3.0 * 0.5, 1e-15);
}

TEST(External, PiProductStaysFiniteForLongChains) {
  Stream rng(3);
  const auto chain = simulate_chain(200000, AlphaParam(1.5), rng);
  const double p = pi_product(chain, 0, chain.tau - 1);
  EXPECT_GT(p, 0.0);
  EXPECT_LT(p, 1.0);
  const auto expected = conditional_expected_externals(chain);
  EXPECT_NEAR(expected.back(), chain.x[chain.tau - 1] * p, 1e-12);
}

TEST(External, InvalidChainIsRejected) {
  auto chain = hand_chain();
  chain.u.pop_back();
  Stream rng(1);
  EXPECT_THROW(thin_external(chain, rng), std::invalid_argument);
}

// Resample the thinning on one fixed chain: E[Y_k | X] = X_k Pi_0^k, and
// Var(H_k - U_k Y_{k-1} / X_{k-1}) <= E[U_k Y_{k-1} / X_{k-1}].
TEST(External, ConditionalMomentsOnFixedChain) {
  Stream chain_rng(2718);
  const auto chain = simulate_chain(50, AlphaParam(1.5), chain_rng);
  const auto expected = conditional_expected_externals(chain);
  const auto tau = static_cast<std::size_t>(chain.tau);
  constexpr int kResamples = 100000;
  std::vector<double> y_sum(tau, 0.0);
  std::vector<double> y_sq(tau, 0.0);
  std::vector<double> c_sum(tau, 0.0);
  std::vector<double> c_sq(tau, 0.0);
  std::vector<double> c_q(tau, 0.0);
  std::vector<double> bound_sum(tau, 0.0);
  Stream thin_rng(31415);
  for (int r = 0; r < kResamples; ++r) {
    const auto ext = thin_external(chain, thin_rng);
    for (std::size_t k = 0; k < tau; ++k) {
      const double y = static_cast<double>(ext.y[k]);
      y_sum[k] += y;
      y_sq[k] += y * y;
      const double scale = static_cast<double>(chain.u[k]) /
                           static_cast<double>(chain.x[k]);
      const double c = static_cast<double>(ext.h[k]) - scale * y;
      c_sum[k] += c;
      c_sq[k] += c * c;
      c_q[k] += c * c * c * c;
      bound_sum[k] += scale * y;
    }
  }
  for (std::size_t k = 0; k < tau; ++k) {
    const double mean = y_sum[k] / kResamples;
    const double var = y_sq[k] / kResamples - mean * mean;
    const double se = std::sqrt(std::max(var, 0.0) / kResamples);
    EXPECT_NEAR(mean, expected[k], 4.0 * se + 1e-12) << "k=" << k;

    const double c_mean = c_sum[k] / kResamples;
    const double c_var = c_sq[k] / kResamples - c_mean * c_mean;
    const double fourth = c_q[k] / kResamples;
    const double var_se =
        std::sqrt(std::max(fourth - c_var * c_var, 0.0) / kResamples);
    EXPECT_LE(c_var, bound_sum[k] / kResamples + 3.0 * var_se) << "k=" << k;
  }
}

TEST(External, FusedSummaryIsBitIdenticalToStoredTrajectory) {
  for (double a : {1.1, 1.5, 1.9}) {
    for (std::int64_t n : {1, 2, 7, 100, 5000, 100000}) {
      for (std::uint64_t s = 0; s < 5; ++s) {
        const std::uint64_t seed = derive_seed(n, s);
        const auto full =
            simulate_replicate(n, AlphaParam(a), seed, StoragePolicy::trajectory);
        const auto fused =
            simulate_replicate(n, AlphaParam(a), seed, StoragePolicy::summary);
        ASSERT_TRUE(full.chain.has_value());
        ASSERT_TRUE(full.external.has_value());
        EXPECT_FALSE(fused.chain.has_value());
        EXPECT_EQ(full.tau, fused.tau);
        EXPECT_EQ(full.L, fused.L);
        EXPECT_EQ(full.ell, fused.ell);
        EXPECT_EQ(full.chain->tau, full.tau);
      }
    }
  }
}

// E[ell_n] and E[L_n] against first-step analysis over (blocks, singletons).
TEST(External, MeanLengthsMatchExactRecursion) {
  for (double a : {1.2, 1.5, 1.8}) {
    for (int n : {5, 20}) {
      const long double exact_ell = testing::exact_external_length(n, a);
      const auto exact = testing::exact_chain_expectations(n, a);
      std::vector<double> ells;
      std::vector<double> lengths;
      for (int r = 0; r < 40000; ++r) {
        const auto rep = simulate_replicate(
            n, AlphaParam(a), derive_seed(static_cast<std::uint64_t>(a * 100), r),
            StoragePolicy::summary);
        ells.push_back(rep.ell);
        lengths.push_back(rep.L);
      }
      const auto ell = testing::mean_se(ells);
      const auto len = testing::mean_se(lengths);
      EXPECT_NEAR(ell.mean, static_cast<double>(exact_ell), 4.0 * ell.se)
          << "alpha=" << a << " n=" << n;
      EXPECT_NEAR(len.mean, static_cast<double>(exact.length[n]), 4.0 * len.se)
          << "alpha=" << a << " n=" << n;
    }
  }
}

TEST(External, ExactExternalLengthOfTwoAndThree) {
  // n = 2: one holding time of rate 1, two external branches.
  EXPECT_NEAR(static_cast<double>(testing::exact_external_length(2, 1.5L)),
              2.0, 1e-15);
  // n = 3 at alpha = 1.5: 3 / 2.5 from the first step; after a pair merger
  // (probability 0.9) one singleton remains for an expected time 1.
  EXPECT_NEAR(static_cast<double>(testing::exact_external_length(3, 1.5L)),
              1.2 + 0.9, 1e-14);
}

TEST(External, DeviationOfHandTrajectory) {
  auto chain = hand_chain();
  chain.alpha = AlphaParam(1.5);
  ExternalTrajectory ext;
  ext.y = {5, 2, 1, 0};
  // j = 1: |1/5 - (1/3)^1.5|, j = 2: |2/5 - (2/3)^1.5|, j = 3: |1 - 1|.
  const double d1 = std::abs(0.2 - std::pow(1.0 / 3.0, 1.5));
  const double d2 = std::abs(0.4 - std::pow(2.0 / 3.0, 1.5));
  EXPECT_NEAR(max_external_deviation(chain, ext), std::max(d1, d2), 1e-15);
}

}  // namespace
}  // namespace betacoal
