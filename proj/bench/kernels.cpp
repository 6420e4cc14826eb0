// Copyright 2026 The qchan Authors
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

// OpenMP kernels against their serial reference versions, and the
// multi-start driver with and without run-level parallelism.

#include <benchmark/benchmark.h>

#include "qchan/optimizer.hpp"
#include "qchan/reference.hpp"

namespace qchan {
namespace {

Matrix gaussian(Index rows, Index cols, Rng& rng) {
  Matrix a(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) a(i, j) = rng.complex_normal();
  return a;
}

void BM_Kron(benchmark::State& state) {
  Rng rng(1);
  const Index s = state.range(0);
  const Matrix a = gaussian(s, s, rng), b = gaussian(s, s, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kron(a, b));
}

void BM_KronReference(benchmark::State& state) {
  Rng rng(1);
  const Index s = state.range(0);
  const Matrix a = gaussian(s, s, rng), b = gaussian(s, s, rng);
  for (auto _ : state) benchmark::DoNotOptimize(reference::kron(a, b));
}

void BM_PartialTrace(benchmark::State& state) {
  Rng rng(2);
  const Index k = state.range(0);
  const Matrix m = gaussian(k * k, k * k, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_trace_second(m, k, k));
    benchmark::DoNotOptimize(partial_trace_first(m, k, k));
  }
}

void BM_PartialTraceReference(benchmark::State& state) {
  Rng rng(2);
  const Index k = state.range(0);
  const Matrix m = gaussian(k * k, k * k, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::partial_trace_second(m, k, k));
    benchmark::DoNotOptimize(reference::partial_trace_first(m, k, k));
  }
}

void BM_ApplyChoi(benchmark::State& state) {
  Rng rng(3);
  const Index n = state.range(0);
  const ChoiMatrix c = random_channel({n, n}, rng);
  const Matrix a = gaussian(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(apply_choi(c, a));
}

void BM_ApplyChoiReference(benchmark::State& state) {
  Rng rng(3);
  const Index n = state.range(0);
  const ChoiMatrix c = random_channel({n, n}, rng);
  const Matrix a = gaussian(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(reference::apply_choi(c, a));
}

void BM_KrausToChoi(benchmark::State& state) {
  Rng rng(4);
  const Index n = state.range(0);
  const KrausSet k = stiefel_to_kraus(random_stiefel({n, n}, rng));
  for (auto _ : state) benchmark::DoNotOptimize(kraus_to_choi(k));
}

void BM_KrausToChoiReference(benchmark::State& state) {
  Rng rng(4);
  const Index n = state.range(0);
  const KrausSet k = stiefel_to_kraus(random_stiefel({n, n}, rng));
  for (auto _ : state) benchmark::DoNotOptimize(reference::choi_blockwise(k));
}

void BM_MultiStart(benchmark::State& state) {
  Rng rng(5);
  const Objective obj = Objective::gate_generation(random_unitary(2, rng));
  OptimizerConfig cfg;
  cfg.seed = 17;
  const bool parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(multi_start(obj, 16, cfg, 1e-6, parallel));
}

BENCHMARK(BM_Kron)->Arg(4)->Arg(16)->Arg(32);
BENCHMARK(BM_KronReference)->Arg(4)->Arg(16)->Arg(32);
BENCHMARK(BM_PartialTrace)->Arg(4)->Arg(16)->Arg(24);
BENCHMARK(BM_PartialTraceReference)->Arg(4)->Arg(16)->Arg(24);
BENCHMARK(BM_ApplyChoi)->Arg(3)->Arg(8)->Arg(12);
BENCHMARK(BM_ApplyChoiReference)->Arg(3)->Arg(8)->Arg(12);
BENCHMARK(BM_KrausToChoi)->Arg(3)->Arg(6)->Arg(9);
BENCHMARK(BM_KrausToChoiReference)->Arg(3)->Arg(6)->Arg(9);
BENCHMARK(BM_MultiStart)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace qchan

BENCHMARK_MAIN();
