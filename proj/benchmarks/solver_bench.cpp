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

#include <random>

#include "summability/builders.hpp"
#include "summability/lp.hpp"
#include "summability/minimax.hpp"
#include "summability/summing.hpp"

namespace {

using namespace summability;

LpProblem random_lp(std::size_t m, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  LpProblem lp{std::vector<double>(n), Table(m, n), std::vector<double>(m)};
  for (double& c : lp.objective) c = u(rng);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) lp.constraint_matrix(i, j) = 0.1 + u(rng);
    lp.bounds[i] = 0.5 + u(rng);
  }
  return lp;
}

void BM_SolveLp(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const LpProblem lp = random_lp(size, size, 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(lp).value);
}
BENCHMARK(BM_SolveLp)->Arg(8)->Arg(32)->Arg(128);

void BM_MwuMinimax(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Table payoff(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) payoff(i, j) = u(rng);
  }
  const MatrixPayoff oracle(payoff);
  for (auto _ : state) benchmark::DoNotOptimize(mwu_minimax({&oracle, 20000, 1e-4}).value);
}
BENCHMARK(BM_MwuMinimax)->Arg(4)->Arg(8);

void BM_SummingConstantExact(benchmark::State& state) {
  const SummingInstance inst = build_random_summing(3, static_cast<std::size_t>(state.range(0)), 3, 3, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(summing_constant_exact(inst, 1.0, 1.0).constant);
}
BENCHMARK(BM_SummingConstantExact)->Arg(4)->Arg(16);

void BM_BruteForceBudget6(benchmark::State& state) {
  const SummingInstance inst = build_random_summing(3, 4, 3, 3, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(summing_constant_bruteforce(inst, 2.0, 2.0, 1.0, 6).constant);
  }
}
BENCHMARK(BM_BruteForceBudget6);

}  // namespace
