// Copyright 2026 The nordheim-lab Authors
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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "nordheim/collision.hpp"
#include "nordheim/integrator.hpp"

namespace {

using namespace nordheim;

std::vector<double> random_values(std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> f(n);
  for (auto& v : f) v = u(rng);
  return f;
}

void BM_Conservative(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = make_grid(5.0, n);
  const auto f = random_values(n);
  const ParallelOptions single{1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(collide_conservative(g, f, CollisionTerms::kFull, single));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Conservative)->RangeMultiplier(2)->Range(32, 256)->Complexity(benchmark::oNCubed);

void BM_Collocation(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = make_grid(5.0, n);
  const auto f = random_values(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(collide_collocation(g, f));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Collocation)->RangeMultiplier(2)->Range(32, 256)->Complexity(benchmark::oNCubed);

void BM_Rk4Step(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SimState s{0.0, Distribution(make_grid(5.0, n), random_values(n)), 0};
  for (auto _ : state) benchmark::DoNotOptimize(step_rk4(s, 1e-5));
}
BENCHMARK(BM_Rk4Step)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
