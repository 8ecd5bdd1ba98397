// Copyright 2026 The subgauss Authors
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

#include <cmath>

#include "subgauss/analysis.hpp"
#include "subgauss/baselines.hpp"
#include "subgauss/distributions.hpp"
#include "subgauss/estimator.hpp"
#include "subgauss/rng.hpp"

namespace {

using namespace subgauss;

SampleSet make_samples(std::size_t n) {
  DistributionSpec spec{Family::kGaussian, 0.0, true};
  return sample_distribution(spec, n, 0xBE7C);
}

void BM_SampleGaussian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  DistributionSpec spec{Family::kGaussian, 0.0, true};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_distribution(spec, n, seed++));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleGaussian)->Arg(1000)->Arg(100000);

void BM_SamplePareto(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  DistributionSpec spec{Family::kPareto, 3.5, true};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_distribution(spec, n, seed++));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SamplePareto)->Arg(100000);

void BM_SolveAlpha(benchmark::State& state) {
  const auto samples = make_samples(static_cast<std::size_t>(state.range(0)));
  const Confidence conf(1e-4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_alpha(samples, 0.01, conf));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SolveAlpha)->Range(1000, 1000000);

void BM_Estimate(benchmark::State& state) {
  const auto samples = make_samples(static_cast<std::size_t>(state.range(0)));
  const Confidence conf(1e-4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate(samples, conf));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Estimate)->Range(1000, 1000000);

void BM_PsiRoot(benchmark::State& state) {
  const auto samples = make_samples(static_cast<std::size_t>(state.range(0)));
  const Confidence conf(1e-4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi_root(samples, conf));
  }
}
BENCHMARK(BM_PsiRoot)->Arg(10000);

void BM_Catoni(benchmark::State& state) {
  const auto samples = make_samples(static_cast<std::size_t>(state.range(0)));
  const Confidence conf(1e-4);
  baselines::CatoniConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(baselines::catoni_estimate(samples, conf, cfg));
  }
}
BENCHMARK(BM_Catoni)->Arg(10000);

void BM_Lemma5Gap(benchmark::State& state) {
  const auto co = analysis::lemma5_coefficients(1.0);
  double y = -50.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(analysis::lemma5_terms(1.0, co.a, co.b, y));
    y += 1e-3;
    if (y > 50.0) y = -50.0;
  }
}
BENCHMARK(BM_Lemma5Gap);

void BM_CounterUniform(benchmark::State& state) {
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(counter_uniform(42, 7, i++));
  }
}
BENCHMARK(BM_CounterUniform);

}  // namespace

BENCHMARK_MAIN();
