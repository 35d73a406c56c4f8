// trunclab — statistical test kit implementation.
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.

#include "trunclab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace trunclab {

double gaussian_cdf(double x, double variance) {
  if (!(variance > 0.0))
    throw std::invalid_argument("gaussian_cdf: variance must be > 0");
  // erfc keeps full relative precision in the left tail, where the naive
  // 0.5 * (1 + erf(...)) form would cancel.
  return 0.5 * std::erfc(-x / std::sqrt(2.0 * variance));
}

namespace detail {

double kolmogorov_sf(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  constexpr double kTermTol = 1e-10;
  if (lambda < 0.755) {
    // CDF via the theta-transformed series; one or two terms suffice here.
    const double c = std::numbers::pi * std::numbers::pi /
                     (8.0 * lambda * lambda);
    double cdf_sum = 0.0;
    for (int k = 1;; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * c);
      cdf_sum += term;
      if (term < kTermTol) break;
    }
    const double cdf = std::sqrt(2.0 * std::numbers::pi) / lambda * cdf_sum;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sf = 0.0;
  double sign = 1.0;
  for (int k = 1;; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sf += sign * term;
    sign = -sign;
    if (term < kTermTol) break;
  }
  return std::clamp(2.0 * sf, 0.0, 1.0);
}

namespace {

// D = sup |F_N - F| over a sorted sample; validates that cdf is monotone
// and within [0, 1] along the way.
double ks_statistic_sorted(const std::vector<double>& sorted,
                           const std::function<double(double)>& cdf) {
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  double prev_f = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    if (!(f >= 0.0) || !(f <= 1.0))
      throw std::invalid_argument(
          "ks: cdf returned a value outside [0, 1]");
    if (f < prev_f)
      throw std::invalid_argument("ks: cdf is not monotone on the sample");
    prev_f = f;
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  return d;
}

double pairwise_abs_pow(const double* x, std::size_t n, double q) {
  if (n <= 64) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::pow(std::fabs(x[i]), q);
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_abs_pow(x, h, q) + pairwise_abs_pow(x + h, n - h, q);
}

}  // namespace

}  // namespace detail

double ks_statistic_one_sample(std::vector<double> samples,
                               const std::function<double(double)>& cdf) {
  if (samples.empty())
    throw std::invalid_argument("ks_statistic_one_sample: empty sample");
  std::sort(samples.begin(), samples.end());
  return detail::ks_statistic_sorted(samples, cdf);
}

KsResult ks_one_sample(std::vector<double> samples,
                       const std::function<double(double)>& cdf) {
  if (samples.size() < 50)
    throw std::invalid_argument(
        "ks_one_sample: the asymptotic p-value needs at least 50 samples; "
        "use ks_statistic_one_sample for the bare statistic");
  std::sort(samples.begin(), samples.end());
  KsResult r;
  r.statistic = detail::ks_statistic_sorted(samples, cdf);
  r.n_eff = static_cast<double>(samples.size());
  r.p_value = detail::kolmogorov_sf(std::sqrt(r.n_eff) * r.statistic);
  return r;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.size() < 50 || b.size() < 50)
    throw std::invalid_argument(
        "ks_two_sample: both samples need at least 50 points");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double m = static_cast<double>(a.size());
  const double n = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / m -
                              static_cast<double>(j) / n));
  }
  KsResult r;
  r.statistic = d;
  r.n_eff = m * n / (m + n);
  r.p_value = detail::kolmogorov_sf(std::sqrt(r.n_eff) * d);
  return r;
}

double empirical_moment(const std::vector<double>& samples, double q) {
  if (!(q > 0.0))
    throw std::invalid_argument("empirical_moment: q must be > 0");
  if (samples.empty()) return 0.0;
  return detail::pairwise_abs_pow(samples.data(), samples.size(), q) /
         static_cast<double>(samples.size());
}

double quantile(std::vector<double> samples, double q) {
  if (samples.empty())
    throw std::invalid_argument("quantile: empty sample");
  if (!(q >= 0.0) || !(q <= 1.0))
    throw std::invalid_argument("quantile: q must lie in [0, 1]");
  std::sort(samples.begin(), samples.end());
  const double pos = q * static_cast<double>(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= samples.size()) return samples.back();
  const double frac = pos - static_cast<double>(lo);
  return samples[lo] + frac * (samples[lo + 1] - samples[lo]);
}

}  // namespace trunclab
