// trunclab — statistics microbenchmarks: Kolmogorov tail evaluation,
// one- and two-sample KS scans, and the pairwise moment accumulator.
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "trunclab/rng.hpp"
#include "trunclab/stats.hpp"

namespace {

using namespace trunclab;

std::vector<double> normal_sample(std::size_t n, std::uint64_t seed) {
  RandomStream s(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = sample_normal(s);
  return out;
}

void BM_KolmogorovSf(benchmark::State& state) {
  const double lambda = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(detail::kolmogorov_sf(lambda));
}
BENCHMARK(BM_KolmogorovSf)->Arg(40)->Arg(75)->Arg(135);

void BM_KsOneSample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> xs = normal_sample(n, 42);
  const auto cdf = [](double x) { return gaussian_cdf(x, 1.0); };
  for (auto _ : state) {
    std::vector<double> copy = xs;  // ks sorts; keep the fixture pristine
    benchmark::DoNotOptimize(ks_one_sample(std::move(copy), cdf));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_KsOneSample)->Arg(2000)->Arg(20000);

void BM_KsTwoSample(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> a = normal_sample(n, 42);
  const std::vector<double> b = normal_sample(n, 43);
  for (auto _ : state) {
    std::vector<double> ca = a, cb = b;
    benchmark::DoNotOptimize(ks_two_sample(std::move(ca), std::move(cb)));
  }
  state.SetItemsProcessed(state.iterations() * 2 * n);
}
BENCHMARK(BM_KsTwoSample)->Arg(2000)->Arg(20000);

void BM_EmpiricalMoment(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> xs = normal_sample(n, 42);
  for (auto _ : state) benchmark::DoNotOptimize(empirical_moment(xs, 2.0));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_EmpiricalMoment)->Arg(2000)->Arg(200000);

void BM_Quantile(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> xs = normal_sample(n, 42);
  for (auto _ : state) {
    std::vector<double> copy = xs;
    benchmark::DoNotOptimize(quantile(std::move(copy), 0.99));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Quantile)->Arg(2000)->Arg(200000);

}  // namespace
