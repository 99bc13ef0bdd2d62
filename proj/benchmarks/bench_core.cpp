// Copyright 2026 The qncg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qncg/verifier.hpp"

using namespace qncg;

namespace {

void BM_realize_clique(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = PriceFunction::reciprocal(16, 1, 10);
  const auto profile = clique_profile(n, GameKind::kSum, p, 4.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(social_cost(realize(profile)));
  }
}
BENCHMARK(BM_realize_clique)->Arg(8)->Arg(16)->Arg(32);

void BM_minimize_tabulated(benchmark::State& state) {
  std::vector<PricePoint> points;
  const int k = static_cast<int>(state.range(0));
  for (int i = 0; i <= k; ++i) {
    const double x = 1.0 + 9.0 * i / k;
    points.push_back({x, 100.0 / x});
  }
  const auto p = PriceFunction::tabulated(points);
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.minimize_tradeoff(3.0).argmin);
  }
}
BENCHMARK(BM_minimize_tabulated)->Arg(64)->Arg(1024)->Arg(16384);

void BM_certify_equilibrium(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = PriceFunction::reciprocal(16, 1, 10);
  const auto outcome = sum_ne(n, p);
  const auto cands = CandidateWeights::build(p, n, 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        certify_ne(outcome.profile, DeviationFamily::kExhaustiveSubset, cands)
            .stable);
  }
}
BENCHMARK(BM_certify_equilibrium)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_best_response(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = PriceFunction::reciprocal(16, 1, 10);
  const auto profile = StrategyProfile::empty(n, GameKind::kSum, p);
  const auto cands = CandidateWeights::build(p, n, 16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_response(profile, 0, cands).edges.size());
  }
}
BENCHMARK(BM_best_response)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
