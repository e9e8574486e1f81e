// Copyright 2026 The Summability Authors
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

#include "summability/builders.hpp"
#include "summability/pdt.hpp"

namespace {

using namespace summability;

PdtInstance cohen_2x2() {
  TensorSpec spec;
  spec.out_dim = 2;
  spec.dims = {2, 2};
  spec.coefficients = {1, 0, 0, 1, 0, 1, -1, 0};
  spec.target_norm = NormKind::kOne;
  return build_cohen(spec, 2.0);
}

void BM_BestConstantOneKernel(benchmark::State& state) {
  const PdtInstance inst = build_random_pdt(4, 8, static_cast<std::size_t>(state.range(0)), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(best_constant_duality(inst, 1e-9).constant);
}
BENCHMARK(BM_BestConstantOneKernel)->Arg(8)->Arg(32);

void BM_SynthesizeCohen(benchmark::State& state) {
  const PdtInstance inst = cohen_2x2();
  const double c = 1.05 * summing_lb_pdt(inst, 4).constant;
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_measures(inst, c).status);
}
BENCHMARK(BM_SynthesizeCohen);

void BM_BestConstantCohen(benchmark::State& state) {
  const PdtInstance inst = cohen_2x2();
  for (auto _ : state) benchmark::DoNotOptimize(best_constant_duality(inst, 1e-6).constant);
}
BENCHMARK(BM_BestConstantCohen)->Unit(benchmark::kMillisecond);

void BM_SummingLowerBound(benchmark::State& state) {
  const PdtInstance inst = cohen_2x2();
  for (auto _ : state) {
    benchmark::DoNotOptimize(summing_lb_pdt(inst, static_cast<std::size_t>(state.range(0))).constant);
  }
}
BENCHMARK(BM_SummingLowerBound)->Arg(2)->Arg(4);

}  // namespace
