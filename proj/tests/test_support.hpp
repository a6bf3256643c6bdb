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

// Independent oracles shared by the test suites. Nothing here calls into the
// library's rate, sampling or thinning code paths.

#ifndef BETACOAL_TESTS_TEST_SUPPORT_HPP
#define BETACOAL_TESTS_TEST_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace betacoal::testing {

/// Integral over (0, 1) of p^(a-1) (1-p)^(b-1) by tanh-sinh quadrature in
/// long double.
inline long double quadrature_beta(long double a, long double b) {
  boost::math::quadrature::tanh_sinh<long double> integrator;
  // The two-argument form passes the distance to the nearer endpoint, which
  // keeps 1 - p accurate near p = 1.
  auto integrand = [a, b](long double p, long double pc) {
    const long double q = p <= 0.5L ? 1.0L - p : pc;
    return std::pow(p, a - 1.0L) * std::pow(q, b - 1.0L);
  };
  return integrator.integrate(integrand, 0.0L, 1.0L, 1e-16L);
}

/// Integral of p^(k-2) (1-p)^(b-k) Lambda(dp) for Lambda = Beta(2 - alpha,
/// alpha), numerator and normalizer both by quadrature.
inline long double quadrature_lambda_bk(int b, int k, long double alpha,
                                        long double normalizer) {
  return quadrature_beta(k - alpha, b - k + alpha) / normalizer;
}

inline long double quadrature_lambda_bk(int b, int k, long double alpha) {
  return quadrature_lambda_bk(b, k, alpha,
                              quadrature_beta(2.0L - alpha, alpha));
}

/// Merger-size pmf for b blocks from binomial weights of the quadrature rates.
inline std::vector<double> quadrature_size_pmf(int b, double alpha) {
  const long double norm = quadrature_beta(2.0L - alpha, alpha);
  std::vector<long double> w;
  long double binom = 1.0L;
  long double total = 0.0L;
  for (int k = 1; k <= b; ++k) {
    binom = binom * (b - k + 1) / k;
    if (k >= 2) {
      w.push_back(binom * quadrature_lambda_bk(b, k, alpha, norm));
      total += w.back();
    }
  }
  std::vector<double> pmf;
  for (long double x : w) {
    pmf.push_back(static_cast<double>(x / total));
  }
  return pmf;
}

/// log C(n, k) via lgamma, independent of the library's log factorials.
inline long double log_choose(long double n, long double k) {
  return std::lgamma(n + 1.0L) - std::lgamma(k + 1.0L) -
         std::lgamma(n - k + 1.0L);
}

/// Merger-size pmf for b blocks from closed-form log-Beta weights (long
/// double), indexed by k - 2.
inline std::vector<long double> closed_form_size_pmf(int b, long double alpha,
                                                     long double* total_out) {
  std::vector<long double> w;
  long double total = 0.0L;
  const long double log_norm = std::lgamma(2.0L - alpha) + std::lgamma(alpha);
  for (int k = 2; k <= b; ++k) {
    const long double log_beta = std::lgamma(k - alpha) +
                                 std::lgamma(b - k + alpha) -
                                 std::lgamma(static_cast<long double>(b));
    w.push_back(std::exp(log_choose(b, k) + log_beta - log_norm));
    total += w.back();
  }
  for (auto& x : w) {
    x /= total;
  }
  if (total_out != nullptr) {
    *total_out = total;
  }
  return w;
}

/// Exact E[tau_b] and E[L_b] for b = 0..n by first-step analysis of the
/// block-counting chain.
struct ChainExpectations {
  std::vector<long double> tau;
  std::vector<long double> length;
};

inline ChainExpectations exact_chain_expectations(int n, long double alpha) {
  ChainExpectations e;
  e.tau.assign(n + 1, 0.0L);
  e.length.assign(n + 1, 0.0L);
  for (int b = 2; b <= n; ++b) {
    long double rate = 0.0L;
    const auto pmf = closed_form_size_pmf(b, alpha, &rate);
    long double tau = 1.0L;
    long double len = b / rate;
    for (int k = 2; k <= b; ++k) {
      tau += pmf[k - 2] * e.tau[b - k + 1];
      len += pmf[k - 2] * e.length[b - k + 1];
    }
    e.tau[b] = tau;
    e.length[b] = len;
  }
  return e;
}

/// Pascal-triangle binomial coefficients; exact in double for n <= 56.
inline std::vector<std::vector<double>> pascal(int n) {
  std::vector<std::vector<double>> c(n + 1);
  for (int i = 0; i <= n; ++i) {
    c[i].assign(i + 1, 1.0);
    for (int j = 1; j < i; ++j) {
      c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
    }
  }
  return c;
}

/// Hyp(N, M, nu) pmf by brute-force binomial coefficients, N <= 56.
inline std::vector<double> brute_force_hypergeometric(int big_n, int marked,
                                                      int draws) {
  const auto c = pascal(big_n);
  auto choose = [&](int a, int b) {
    return (b < 0 || b > a) ? 0.0 : c[a][b];
  };
  std::vector<double> pmf(draws + 1, 0.0);
  for (int h = 0; h <= draws; ++h) {
    pmf[h] = choose(marked, h) * choose(big_n - marked, draws - h) /
             choose(big_n, draws);
  }
  return pmf;
}

/// Exact E[ell_n] by first-step analysis over (blocks, singletons).
inline long double exact_external_length(int n, long double alpha) {
  // value[b][y] = expected remaining external length from b blocks, y of them
  // singletons.
  std::vector<std::vector<long double>> value(n + 1);
  for (int b = 1; b <= n; ++b) {
    value[b].assign(b + 1, 0.0L);
  }
  for (int b = 2; b <= n; ++b) {
    long double rate = 0.0L;
    const auto pmf = closed_form_size_pmf(b, alpha, &rate);
    for (int y = 0; y <= b; ++y) {
      long double v = y / rate;
      for (int k = 2; k <= b; ++k) {
        const auto hyp = brute_force_hypergeometric(b, y, k);
        for (int h = 0; h <= std::min(y, k); ++h) {
          if (hyp[h] > 0.0 && y - h <= b - k + 1) {
            v += pmf[k - 2] * hyp[h] * value[b - k + 1][y - h];
          }
        }
      }
      value[b][y] = v;
    }
  }
  return value[n][n];
}

/// Chi-square goodness of fit of observed counts against pmf. Bins whose
/// expected count is below 5 are pooled into their neighbour.
inline double chi_square_p_value(const std::vector<std::int64_t>& observed,
                                 const std::vector<double>& pmf,
                                 std::int64_t total) {
  std::vector<double> exp_bins;
  std::vector<double> obs_bins;
  double e_acc = 0.0;
  double o_acc = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    e_acc += pmf[i] * static_cast<double>(total);
    o_acc += static_cast<double>(observed[i]);
    if (e_acc >= 5.0) {
      exp_bins.push_back(e_acc);
      obs_bins.push_back(o_acc);
      e_acc = 0.0;
      o_acc = 0.0;
    }
  }
  if (!exp_bins.empty()) {
    exp_bins.back() += e_acc;
    obs_bins.back() += o_acc;
  }
  if (exp_bins.size() < 2) {
    return 1.0;
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < exp_bins.size(); ++i) {
    const double d = obs_bins[i] - exp_bins[i];
    stat += d * d / exp_bins[i];
  }
  boost::math::chi_squared dist(static_cast<double>(exp_bins.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

/// CDF of the stable law S_alpha(sigma, -1, 0) by Gil-Pelaez inversion of
/// its characteristic function exp(-|sigma t|^alpha (1 + i sign(t)
/// tan(pi alpha / 2))).
inline double stable_cdf(double x, double alpha, double sigma) {
  const double tan_term = std::tan(std::numbers::pi * alpha / 2.0);
  auto integrand = [=](double t) {
    const double m = std::pow(sigma * t, alpha);
    return std::exp(-m) * std::sin(-m * tan_term - t * x) / t;
  };
  // exp(-(sigma t)^alpha) is below 1e-25 past sigma t = 60^(1 / alpha).
  const double upper = 60.0 / sigma;
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          integrand, 0.0, upper, 20, 1e-13);
  return 0.5 - integral / std::numbers::pi;
}

/// Mean and standard error.
struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

inline MeanSe mean_se(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) {
    m += x;
  }
  m /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) {
    ss += (x - m) * (x - m);
  }
  const double var = ss / static_cast<double>(xs.size() - 1);
  return {m, std::sqrt(var / static_cast<double>(xs.size()))};
}

}  // namespace betacoal::testing

#endif  // BETACOAL_TESTS_TEST_SUPPORT_HPP
