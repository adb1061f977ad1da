// Copyright 2026 The csdiv Authors
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

#include <benchmark/benchmark.h>

#include "csdiv/divergence.hpp"
#include "csdiv/reduction.hpp"
#include "csdiv/rng.hpp"
#include "csdiv/simplex_search.hpp"

namespace {

using namespace csdiv;

void BM_ChenSbert(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  SplitMix64 stream(3);
  const Pmf p = sample_simplex(n, stream);
  const Pmf q = sample_simplex(n, stream);
  const KParam k(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(chen_sbert(p, q, k));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ChenSbert)->Arg(3)->Arg(10)->Arg(100)->Arg(1000);

void BM_ChenSbertUnitK(benchmark::State& state) {
  SplitMix64 stream(3);
  const Pmf p = sample_simplex(100, stream);
  const Pmf q = sample_simplex(100, stream);
  const KParam k(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(chen_sbert(p, q, k));
}
BENCHMARK(BM_ChenSbertUnitK);

void BM_RunTrial(benchmark::State& state) {
  SearchConfig config;
  config.n = static_cast<std::size_t>(state.range(0));
  config.k = KParam(2.0);
  config.variant = Variant::kKthRoot;
  config.trials = 1u << 30;
  std::uint64_t index = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_trial(config, index++));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RunTrial)->Arg(3)->Arg(10);

void BM_VerifyPostulation(benchmark::State& state) {
  SearchConfig config;
  config.n = 3;
  config.k = KParam(0.5);
  config.trials = 100000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_postulation(Postulation::kP1, config));
  }
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_VerifyPostulation)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state) {
  const ReductionProblem problem = build_problem_rows(
      {0.5, 0.1, 0.2}, {0.1, 0.2, 0.4}, {0.3, 0.3, 0.1}, KParam(1.0));
  for (auto _ : state) benchmark::DoNotOptimize(solve(problem));
}
BENCHMARK(BM_Solve)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
