// trunclab — sampler microbenchmarks: stream arithmetic, stable variates
// (scalar and batch paths), and full-model norm draws.
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.

#include <benchmark/benchmark.h>

#include <vector>

#include "trunclab/models.hpp"
#include "trunclab/rng.hpp"

namespace {

using namespace trunclab;

void BM_StreamSplitNext(benchmark::State& state) {
  const RandomStream root(42);
  std::uint64_t i = 0;
  for (auto _ : state) {
    RandomStream child = root.split(++i);
    benchmark::DoNotOptimize(child.next_uniform());
  }
}
BENCHMARK(BM_StreamSplitNext);

void BM_SasScalar(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0)) / 10.0;
  RandomStream s(42);
  const StableParams params{alpha};
  for (auto _ : state) benchmark::DoNotOptimize(sample_sas(params, s));
}
BENCHMARK(BM_SasScalar)->Arg(10)->Arg(12)->Arg(15);

void BM_SasBatch(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0)) / 10.0;
  constexpr int kBatch = 512;
  RandomStream s(42);
  std::vector<double> u1(kBatch), u2(kBatch), out(kBatch);
  for (int i = 0; i < kBatch; ++i) {
    u1[i] = s.next_uniform();
    u2[i] = s.next_uniform();
  }
  for (auto _ : state) {
    detail::sas_transform_batch(u1.data(), u2.data(), out.data(), kBatch,
                                alpha);
    benchmark::DoNotOptimize(out.data());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * kBatch);
}
BENCHMARK(BM_SasBatch)->Arg(10)->Arg(12)->Arg(15);

void BM_SeriesNormDraw(benchmark::State& state) {
  const auto cap = static_cast<std::uint32_t>(state.range(0));
  const TailModelSpec model =
      TailModelSpec::stable_series(1.2, 1.0, 2.0, cap, NormKind::Sup);
  const RandomStream root(42);
  detail::RowWorkspace ws;
  std::uint64_t j = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        detail::sample_H_norm(model, root.split(++j), ws));
}
BENCHMARK(BM_SeriesNormDraw)->Arg(50)->Arg(200);

void BM_MixtureNormDraw(benchmark::State& state) {
  const TailModelSpec model =
      TailModelSpec::rademacher_cauchy_mix(1.5, 5.0, 40);
  const RandomStream root(42);
  detail::RowWorkspace ws;
  std::uint64_t j = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        detail::sample_H_norm(model, root.split(++j), ws));
}
BENCHMARK(BM_MixtureNormDraw);

void BM_TruncatedRow(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const TailModelSpec model = TailModelSpec::scalar_pareto(1.0, 1.0);
  const TruncationScheme scheme(1.0, 0.5, OvershootLaw::zero());
  const RandomStream root(42);
  std::uint64_t rep = 0;
  for (auto _ : state) {
    const RowSumSample row =
        sample_truncated_row(model, scheme, n, root.split(++rep), 1.0);
    benchmark::DoNotOptimize(row.s_n);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_TruncatedRow)->Arg(1000)->Arg(10000);

}  // namespace
