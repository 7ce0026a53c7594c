// Copyright 2026 The twistlab Authors
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

#include "twistlab/approx.hpp"
#include "twistlab/curve.hpp"
#include "twistlab/game.hpp"
#include "twistlab/lattice.hpp"

using namespace twistlab;

namespace {

const SystemShape k21 = SystemShape::make(2, 1);

void BM_BestTwisted(benchmark::State& state) {
  auto a = TargetMatrix::cubic_veronese();
  const double Q = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(best_twisted(a, {0.3, 0.7}, Q, false));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BestTwisted)->RangeMultiplier(8)->Range(1 << 6, 1 << 18)->Complexity(benchmark::oN);

void BM_BestHomogeneous(benchmark::State& state) {
  auto a = TargetMatrix::cubic_veronese();
  const double Q = std::ldexp(1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(best_homogeneous(a, Q));
}
BENCHMARK(BM_BestHomogeneous)->DenseRange(10, 30, 10);

void BM_SuccessiveMinima(benchmark::State& state) {
  auto a = TargetMatrix::random_uniform(SystemShape::make(static_cast<int>(state.range(0)), 2), 7);
  LatticeQ L(a, 1 << 10);
  for (auto _ : state) benchmark::DoNotOptimize(minkowski_minima(L, Body::box(1, 1), false));
}
BENCHMARK(BM_SuccessiveMinima)->DenseRange(1, 3);

void BM_SqSet(benchmark::State& state) {
  auto c = Curve::veronese(2);
  auto a = TargetMatrix::cubic_veronese();
  auto psi = ApproxFn::dirichlet(k21, 0.5);
  const double Q = std::ldexp(1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sq_set(c, {0, 1}, a, psi, Q));
}
BENCHMARK(BM_SqSet)->DenseRange(6, 14, 4);

void BM_AliceMove(benchmark::State& state) {
  auto a = TargetMatrix::cubic_veronese(2, 512);
  GameConfig cfg;
  cfg.epsilon = 0.3865071259;
  Ball B{{Real(0.3), Real(0.7)}, Real(std::ldexp(0.1, -static_cast<int>(state.range(0))))};
  for (auto _ : state) benchmark::DoNotOptimize(alice_move(a, B, cfg));
}
BENCHMARK(BM_AliceMove)->DenseRange(0, 40, 20);

void BM_Game(benchmark::State& state) {
  auto a = TargetMatrix::cubic_veronese(2, 512);
  GameConfig cfg;
  cfg.epsilon = 0.3865071259;
  cfg.rounds = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(play(a, cfg, BobKind::Random));
}
BENCHMARK(BM_Game)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
