// trunclab — statistical test kit: Gaussian CDF, Kolmogorov–Smirnov tests,
// moment and quantile estimators.
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace trunclab {

/// CDF of a centered Gaussian: Phi(x / sqrt(variance)). Built on the C
/// library's erfc, whose absolute error is well below 1e-12 over the real
/// line. Throws std::invalid_argument unless variance > 0.
double gaussian_cdf(double x, double variance);

/// Outcome of a Kolmogorov–Smirnov test.
struct KsResult {
  double statistic = 0.0;  // sup-discrepancy D, in [0, 1]
  double p_value = 0.0;    // asymptotic Kolmogorov p, in [0, 1]
  double n_eff = 0.0;      // sample size (one-sample) or mn/(m+n)
};

/// The raw one-sample KS statistic D = sup_x |F_N(x) - F(x)| for any sample
/// size >= 1. Exposed separately from ks_one_sample because D is a perfectly
/// good descriptive quantity at small N, whereas the asymptotic p-value is
/// not. Throws std::invalid_argument on an empty sample or when `cdf` is
/// detected to be non-monotone (or out of [0, 1]) on the sample points.
double ks_statistic_one_sample(std::vector<double> samples,
                               const std::function<double(double)>& cdf);

/// One-sample KS test against `cdf`, p-value from the asymptotic Kolmogorov
/// series with lambda = sqrt(N) * D. The asymptotic distribution is only
/// trusted for N >= 50; below that the call throws std::invalid_argument
/// (use ks_statistic_one_sample for the bare statistic).
KsResult ks_one_sample(std::vector<double> samples,
                       const std::function<double(double)>& cdf);

/// Two-sample KS test; both samples need >= 50 points. The effective size
/// is mn/(m+n) and the p-value uses lambda = sqrt(n_eff) * D. Ties between
/// and within samples are handled by evaluating the discrepancy only after
/// all points sharing a value have been consumed.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// (1/N) sum |x_i|^q, accumulated pairwise so the error stays O(log N) ulps
/// even for N in the 1e8 range. Empty input returns 0. Throws
/// std::invalid_argument unless q > 0.
double empirical_moment(const std::vector<double>& samples, double q);

/// Order-statistic quantile with linear interpolation (position q*(N-1),
/// the convention most numerical environments default to). Sorts a copy.
/// Throws std::invalid_argument on an empty sample or q outside [0, 1].
double quantile(std::vector<double> samples, double q);

namespace detail {

/// Survival function of the Kolmogorov distribution, P(K > lambda). Uses
/// the standard alternating series 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2)
/// for lambda >= 0.755 and the Jacobi-theta transformed series
/// 1 - (sqrt(2 pi)/lambda) sum exp(-(2k-1)^2 pi^2 / (8 lambda^2)) below it,
/// where the alternating form converges too slowly. Terms are truncated
/// once they drop below 1e-10.
double kolmogorov_sf(double lambda);

}  // namespace detail

}  // namespace trunclab
