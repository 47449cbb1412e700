// Copyright 2026 The QMCI Authors
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

#include <cmath>
#include <vector>

#include "qmci/amp_est.h"
#include "qmci/dist_encode.h"
#include "qmci/fourier_qmci.h"
#include "qmci/func_oracle.h"
#include "qmci/qsim.h"
#include "qmci/rng.h"

namespace {

using namespace qmci;

void BM_HadamardLayer(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  QuantumState s = new_state(n);
  for (auto _ : state) {
    for (std::size_t q = 0; q < n; ++q) s.apply(Gate::h(static_cast<Qubit>(q)));
    benchmark::DoNotOptimize(s.amplitude(0));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_HadamardLayer)->DenseRange(10, 22, 4);

void BM_Qft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Circuit c = qft_circuit(n);
  QuantumState s = new_state(n);
  for (auto _ : state) {
    s.apply(c);
    benchmark::DoNotOptimize(s.amplitude(1));
  }
}
BENCHMARK(BM_Qft)->DenseRange(8, 16, 4);

void BM_StatePrep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DiscretizedDistribution d = discretize(DistributionSpec::gaussian(0, 1), n, -5, 5);
  for (auto _ : state) {
    const StatePrepCircuit sp = synthesize_state_prep(d);
    QuantumState s = new_state(n);
    s.apply(sp.circuit);
    benchmark::DoNotOptimize(s.amplitude(0));
  }
}
BENCHMARK(BM_StatePrep)->DenseRange(4, 12, 4);

void BM_AmplifiedProbabilities(benchmark::State& state) {
  const std::size_t n = 6;
  const DiscretizedDistribution d = discretize(DistributionSpec::gaussian(0, 1), n, -5, 5);
  const EstimationProblem p = make_problem(
      synthesize_state_prep(d), build_harmonic_oracle({0.3, 0.1}, n));
  const Schedule s = Schedule::exponential(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(amplified_probabilities(p, s));
}
BENCHMARK(BM_AmplifiedProbabilities)->Arg(6)->Arg(9);

void BM_MaximumLikelihood(benchmark::State& state) {
  const Schedule s = Schedule::exponential(static_cast<std::size_t>(state.range(0)), 20);
  std::vector<double> probs;
  for (const ScheduleEntry& e : s.entries()) {
    const double x = std::sin((2.0 * static_cast<double>(e.iterations) + 1) * 0.6);
    probs.push_back(x * x);
  }
  Rng rng(1);
  const ScheduleResults r = sample_schedule(probs, s, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mle_estimate(r, s));
}
BENCHMARK(BM_MaximumLikelihood)->Arg(6)->Arg(10);

void BM_CosineSeries(benchmark::State& state) {
  const DiscretizedDistribution d = discretize(DistributionSpec::gaussian(0, 1), 10, -5, 5);
  const BoundedFunction f = normalize_function(evaluate_on_grid(Integrand::relu(0.0), d));
  for (auto _ : state) benchmark::DoNotOptimize(cosine_series(f, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_CosineSeries)->Arg(10)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
