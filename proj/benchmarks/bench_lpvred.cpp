/*
 Copyright 2026 The lpvred Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include <benchmark/benchmark.h>

#include "lpvred/generators.hpp"
#include "lpvred/gramians.hpp"
#include "lpvred/hankel_reduce.hpp"
#include "lpvred/lyapunov.hpp"
#include "lpvred/norms.hpp"
#include "lpvred/sensitivity.hpp"
#include "lpvred/simulate.hpp"

namespace {

using namespace lpvred;

AffineLpvModel bench_model(Index n, Index l) {
  RandomModelOptions opt;
  opt.n = n;
  opt.l = l;
  return generate_random_model(17, opt);
}

void BM_EvaluateAt(benchmark::State& state) {
  const AffineLpvModel model =
      bench_model(state.range(0), state.range(1));
  const Vector theta = model.box().sample(1, 3)[0];
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.evaluate_at(theta));
  }
}
BENCHMARK(BM_EvaluateAt)->Args({10, 3})->Args({45, 5});

void BM_LyapunovSolve(benchmark::State& state) {
  const AffineLpvModel model = bench_model(state.range(0), 3);
  const LtiRealization sys = model.evaluate_at(model.box().center());
  const Matrix rhs = sys.B * sys.B.transpose();
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_continuous_lyapunov(sys.A, rhs));
  }
}
BENCHMARK(BM_LyapunovSolve)->Arg(10)->Arg(45);

void BM_StaticGramianSynthesis(benchmark::State& state) {
  const AffineLpvModel model = bench_model(state.range(0), 2);
  GramianSynthesisOptions opt;
  opt.lmi.trace_min = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        synthesize_gramian(model, GramianKind::Controllability, opt));
  }
}
BENCHMARK(BM_StaticGramianSynthesis)->Arg(6)->Arg(10)->Unit(
    benchmark::kMillisecond);

void BM_HinfNorm(benchmark::State& state) {
  const AffineLpvModel model = bench_model(state.range(0), 3);
  const LtiRealization sys = model.evaluate_at(model.box().center());
  for (auto _ : state) {
    benchmark::DoNotOptimize(hinf_norm(sys));
  }
}
BENCHMARK(BM_HinfNorm)->Arg(10)->Arg(45)->Unit(benchmark::kMicrosecond);

void BM_HankelObjective(benchmark::State& state) {
  const AffineLpvModel model = bench_model(10, 3);
  GramianSynthesisOptions opt;
  opt.lmi.trace_min = false;
  const auto pair = synthesize_gramian_pair(model, opt);
  const HankelObjective objective(model, pair.first, pair.second);
  const Matrix t = ParameterProjection::axes(3, {0, 1}).matrix();
  for (auto _ : state) {
    benchmark::DoNotOptimize(objective.objective(t));
  }
}
BENCHMARK(BM_HankelObjective);

void BM_SensitivityGains(benchmark::State& state) {
  const AffineLpvModel model = bench_model(state.range(0), 5);
  const Vector theta = model.box().center();
  for (auto _ : state) {
    benchmark::DoNotOptimize(sensitivity_gains(model, theta, 1.0));
  }
}
BENCHMARK(BM_SensitivityGains)->Arg(10)->Arg(45)->Unit(
    benchmark::kMicrosecond);

void BM_Simulate(benchmark::State& state) {
  const AffineLpvModel model = bench_model(state.range(0), 3);
  SimulationSpec spec;
  spec.segments.push_back({Vector::Ones(model.m()), 1.0});
  spec.t_final = 2.0;
  spec.theta = model.box().center();
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(model, spec));
  }
}
BENCHMARK(BM_Simulate)->Arg(10)->Arg(45)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
