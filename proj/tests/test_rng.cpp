// trunclab — unit tests for splittable streams and the scalar samplers.
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "trunclab/rng.hpp"
#include "trunclab/stats.hpp"

namespace {

using namespace trunclab;

std::vector<double> take(RandomStream s, std::size_t n) {
  std::vector<double> out(n);
  for (auto& v : out) v = s.next_uniform();
  return out;
}

}  // namespace

TEST_SUITE("rng") {

TEST_CASE("same seed and path reproduce the same sequence") {
  const RandomStream a(12345);
  const RandomStream b(12345);
  CHECK(take(a.split(7), 64) == take(b.split(7), 64));
  CHECK(take(a.split(7).split(3), 64) == take(b.split(7).split(3), 64));
}

TEST_CASE("different children and different seeds disagree") {
  const RandomStream root(12345);
  CHECK(take(root.split(1), 16) != take(root.split(2), 16));
  CHECK(take(RandomStream(1), 16) != take(RandomStream(2), 16));
}

TEST_CASE("splitting never consumes parent state") {
  RandomStream parent(99);
  const std::vector<double> child_before = take(parent.split(4), 32);
  (void)parent.next_uniform();  // advance the parent
  (void)parent.next_uniform();
  CHECK(take(parent.split(4), 32) == child_before);
}

TEST_CASE("uniforms live strictly inside (0,1) with the right mean") {
  RandomStream s(2024);
  double sum = 0.0;
  constexpr int kN = 1000000;
  for (int i = 0; i < kN; ++i) {
    const double u = s.next_uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // SE of the mean is 1/sqrt(12 kN) ~ 2.9e-4; allow ~5 sigma.
  CHECK(std::fabs(sum / kN - 0.5) < 1.5e-3);
}

TEST_CASE("rademacher signs are +-1 and balanced") {
  RandomStream s(7);
  long long sum = 0;
  constexpr int kN = 100000;
  for (int i = 0; i < kN; ++i) {
    const int e = sample_rademacher(s);
    REQUIRE((e == 1 || e == -1));
    sum += e;
  }
  // SE of the sum is sqrt(kN) ~ 316; allow ~5 sigma.
  CHECK(std::llabs(sum) < 1600);
}

TEST_CASE("pareto draws respect the support and the tail law") {
  RandomStream s(11);
  constexpr int kN = 200000;
  const double alpha = 1.3, x_m = 2.0;
  int beyond = 0;
  for (int i = 0; i < kN; ++i) {
    const double x = sample_pareto(alpha, x_m, s);
    REQUIRE(x >= x_m);
    if (x > 2.0 * x_m) ++beyond;
  }
  // P(X > 2 x_m) = 2^-alpha; binomial SE ~ 0.001.
  CHECK(std::fabs(static_cast<double>(beyond) / kN - std::pow(2.0, -alpha)) <
        0.006);
}

TEST_CASE("cauchy draws have a centered median") {
  RandomStream s(13);
  std::vector<double> xs(200001);
  for (auto& x : xs) x = sample_cauchy(s);
  CHECK(std::fabs(quantile(xs, 0.5)) < 0.01);
}

TEST_CASE("normal draws match the gaussian cdf") {
  RandomStream s(17);
  std::vector<double> xs(10000);
  for (auto& x : xs) x = sample_normal(s);
  const auto res =
      ks_one_sample(xs, [](double x) { return gaussian_cdf(x, 1.0); });
  CHECK(res.p_value > 0.01);
}

TEST_CASE("stable draws at alpha = 2 are Normal(0, 2)") {
  RandomStream s(19);
  std::vector<double> xs(10000);
  for (auto& x : xs) x = sample_sas(StableParams{2.0}, s);
  const auto res =
      ks_one_sample(xs, [](double x) { return gaussian_cdf(x, 2.0); });
  CHECK(res.p_value > 0.01);
}

TEST_CASE("stable draws at alpha = 1 are standard Cauchy") {
  RandomStream s(23);
  std::vector<double> xs(10000);
  for (auto& x : xs) x = sample_sas(StableParams{1.0}, s);
  const auto cauchy_cdf = [](double x) {
    return 0.5 + std::atan(x) / std::numbers::pi;
  };
  const auto res = ks_one_sample(xs, cauchy_cdf);
  CHECK(res.p_value > 0.01);
}

TEST_CASE("stable draws are symmetric") {
  RandomStream s(29);
  constexpr int kN = 100000;
  double sum_sign = 0.0;
  for (int i = 0; i < kN; ++i)
    sum_sign += (sample_sas(StableParams{1.2}, s) > 0.0) ? 1.0 : -1.0;
  CHECK(std::fabs(sum_sign) / kN < 0.02);
}

TEST_CASE("batch stable transform agrees with the scalar path in law") {
  // The batch kernel uses relaxed floating-point semantics, so agreement is
  // distributional, not bitwise: two-sample KS on fresh streams.
  const double alpha = 1.5;
  constexpr int kN = 20000;
  RandomStream scalar_stream(31);
  std::vector<double> scalar_draws(kN);
  for (auto& x : scalar_draws) x = sample_sas(StableParams{alpha},
                                              scalar_stream);
  RandomStream batch_stream(37);
  std::vector<double> u1(kN), u2(kN), batch_draws(kN);
  for (int i = 0; i < kN; ++i) {
    u1[i] = batch_stream.next_uniform();
    u2[i] = batch_stream.next_uniform();
  }
  detail::sas_transform_batch(u1.data(), u2.data(), batch_draws.data(), kN,
                              alpha);
  const auto res = ks_two_sample(scalar_draws, batch_draws);
  CHECK(res.p_value > 0.01);
}

}  // TEST_SUITE
