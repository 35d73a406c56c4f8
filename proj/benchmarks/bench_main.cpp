// trunclab — benchmark entry point.
// Copyright (c) 2026 The trunclab authors.
// Distributed under the MIT License; see LICENSE in the repository root.

#include <benchmark/benchmark.h>

BENCHMARK_MAIN();
