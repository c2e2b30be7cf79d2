// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#include <numbers>

#include <benchmark/benchmark.h>

#include "clbound/certify.hpp"
#include "clbound/geometry.hpp"
#include "clbound/optimize.hpp"
#include "clbound/pipeline.hpp"

namespace clbound {
namespace {

const Triangle& right_triangle() {
  static const Triangle tri = make_triangle(1.0, std::numbers::pi / 2);
  return tri;
}

void BM_Assembly(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_fm_system(right_triangle(), n));
}
BENCHMARK(BM_Assembly)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SolveSelectedInverse(benchmark::State& state) {
  const FMSystem sys = build_fm_system(right_triangle(), static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_relaxed(sys.A, sys.B, {DiagonalMethod::kSelectedInverse, 1}));
  }
}
BENCHMARK(BM_SolveSelectedInverse)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SolveRowSolves(benchmark::State& state) {
  const FMSystem sys = build_fm_system(right_triangle(), static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_relaxed(sys.A, sys.B, {DiagonalMethod::kRowSolves, 1}));
  }
}
BENCHMARK(BM_SolveRowSolves)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_SolveCholesky(benchmark::State& state) {
  const FMSystem sys = build_fm_system(right_triangle(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_relaxed_cholesky(sys.A, sys.B, 1));
}
BENCHMARK(BM_SolveCholesky)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_ExtremalLowerBound(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(extremal_lower_bound(right_triangle(), degree));
}
BENCHMARK(BM_ExtremalLowerBound)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace clbound

BENCHMARK_MAIN();
