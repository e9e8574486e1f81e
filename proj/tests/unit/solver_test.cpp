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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "summability/bisect.hpp"
#include "summability/error.hpp"
#include "summability/lp.hpp"
#include "summability/minimax.hpp"
#include "summability/pdt.hpp"

namespace summability {
namespace {

LpProblem problem(std::vector<double> c, const std::vector<std::vector<double>>& a,
                  std::vector<double> b) {
  return LpProblem{std::move(c), Table::from_rows(a), std::move(b)};
}

TEST(SolveLp, Examples) {
  LpResult r = solve_lp(problem({1}, {{1}}, {1}));
  EXPECT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  EXPECT_EQ(solve_lp(problem({1}, {{0}}, {1})).status, LpStatus::kUnbounded);
  EXPECT_EQ(solve_lp(problem({1, 1}, {{1, 1}, {0, 1}}, {-1, 2})).status, LpStatus::kInfeasible);
}

TEST(SolveLp, TextbookOptimum) {
  // maximize 3x + 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18
  const LpResult r = solve_lp(problem({3, 5}, {{1, 0}, {0, 2}, {3, 2}}, {4, 12, 18}));
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.value, 36.0, 1e-12);
  EXPECT_NEAR(r.solution[0], 2.0, 1e-12);
  EXPECT_NEAR(r.solution[1], 6.0, 1e-12);
  EXPECT_NEAR(r.duals[0], 0.0, 1e-12);
  EXPECT_NEAR(r.duals[1], 1.5, 1e-12);
  EXPECT_NEAR(r.duals[2], 1.0, 1e-12);
}

TEST(SolveLp, ShapeErrors) {
  EXPECT_THROW(solve_lp(problem({1, 2}, {{1}}, {1})), Error);
  EXPECT_THROW(solve_lp(LpProblem{}), Error);
}

class LpSeeds : public ::testing::TestWithParam<int> {};

// Primal feasibility, dual feasibility, equal objectives and complementary
// slackness, all checked from the returned vectors.
TEST_P(LpSeeds, StrongDualityAndKkt) {
  std::mt19937_64 rng(GetParam());
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t m = 2 + GetParam() % 7;
  const std::size_t n = 2 + (GetParam() * 3) % 9;
  std::vector<double> c(n);
  std::vector<std::vector<double>> a(m, std::vector<double>(n));
  std::vector<double> b(m);
  for (double& x : c) x = 2.0 * u(rng) - 0.5;
  for (auto& row : a) {
    for (double& x : row) x = u(rng) < 0.2 ? 0.0 : u(rng);
  }
  for (double& x : b) x = 0.5 + u(rng);
  for (std::size_t j = 0; j < n; ++j) a[j % m][j] += 0.1;
  const LpResult r = solve_lp(problem(c, a, b));
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  double primal = 0.0;
  double dual = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    EXPECT_GE(r.solution[j], -1e-12);
    primal += c[j] * r.solution[j];
    double column = 0.0;
    for (std::size_t i = 0; i < m; ++i) column += a[i][j] * r.duals[i];
    EXPECT_GE(column, c[j] - 1e-9);
    EXPECT_NEAR(r.solution[j] * (column - c[j]), 0.0, 1e-9);
  }
  for (std::size_t i = 0; i < m; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += a[i][j] * r.solution[j];
    EXPECT_LE(row, b[i] + 1e-9);
    EXPECT_NEAR(r.duals[i] * (b[i] - row), 0.0, 1e-9);
    dual += b[i] * r.duals[i];
  }
  EXPECT_NEAR(primal, r.value, 1e-9);
  EXPECT_NEAR(dual, r.value, 1e-8);
}

INSTANTIATE_TEST_SUITE_P(Seeds, LpSeeds, ::testing::Range(0, 25));

TEST(SolveLp, Deterministic) {
  const LpProblem p = problem({1, 1, 1}, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}, {1, 1, 1});
  const LpResult a = solve_lp(p);
  const LpResult b = solve_lp(p);
  EXPECT_EQ(a.solution, b.solution);
  EXPECT_EQ(a.pivots, b.pivots);
  EXPECT_NEAR(a.value, 1.5, 1e-12);
}

// Value of the row-maximizing zero-sum game by LP: shift payoffs positive,
// then 1 / max { sum y : A' y <= 1 } is the shifted value.
double game_value_lp(const Table& payoff) {
  double lo = 0.0;
  for (double v : payoff.values()) lo = std::min(lo, v);
  const double shift = 1.0 - lo;
  LpProblem p;
  p.objective.assign(payoff.cols(), 1.0);
  p.constraint_matrix = Table(payoff.rows(), payoff.cols());
  for (std::size_t i = 0; i < payoff.rows(); ++i) {
    for (std::size_t j = 0; j < payoff.cols(); ++j) p.constraint_matrix(i, j) = payoff(i, j) + shift;
  }
  p.bounds.assign(payoff.rows(), 1.0);
  return 1.0 / solve_lp(p).value - shift;
}

TEST(MwuMinimax, MatchingPennies) {
  const MatrixPayoff game(Table::from_rows({{1, -1}, {-1, 1}}));
  const MinimaxResult r = mwu_minimax({&game, 1000, 1e-4});
  EXPECT_EQ(r.status, MinimaxStatus::kConverged);
  EXPECT_NEAR(r.value, 0.0, 1e-4);
  EXPECT_LE(r.residual, 1e-4);
  EXPECT_NEAR(r.row_strategy[0], 0.5, 1e-4);
  EXPECT_NEAR(r.col_strategy[1], 0.5, 1e-4);
}

TEST(MwuMinimax, SingleAction) {
  const MatrixPayoff game(Table::from_rows({{2.5}}));
  const MinimaxResult r = mwu_minimax({&game, 1000, 1e-4});
  EXPECT_EQ(r.status, MinimaxStatus::kConverged);
  EXPECT_EQ(r.iterations, 0u);
  EXPECT_EQ(r.value, 2.5);
}

TEST(MwuMinimax, RequiresOracle) { EXPECT_THROW(mwu_minimax({}), Error); }

class GameSeeds : public ::testing::TestWithParam<int> {};

TEST_P(GameSeeds, AgreesWithLpAndTraceIsMonotone) {
  std::mt19937_64 rng(1000 + GetParam());
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t rows = 2 + GetParam() % 7;
  const std::size_t cols = 2 + (GetParam() * 5) % 7;
  Table payoff(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) payoff(i, j) = u(rng);
  }
  const MatrixPayoff game(payoff);
  const MinimaxResult r = mwu_minimax({&game, 200000, 1e-5});
  EXPECT_NEAR(r.value, game_value_lp(payoff), 1e-4);
  for (std::size_t c = 1; c < r.residual_trace.size(); ++c) {
    EXPECT_LE(r.residual_trace[c], r.residual_trace[c - 1]);
  }
  double total = 0.0;
  for (double x : r.row_strategy) total += x;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Seeds, GameSeeds, ::testing::Range(0, 20));

TEST(Bisect, Threshold) {
  const double c = bisect([](double x) { return x >= 2.0; }, 0.0, 4.0, 1e-9);
  EXPECT_GE(c, 2.0);
  EXPECT_LE(c - 2.0, 2e-9);
}

TEST(Bisect, InvalidBrackets) {
  EXPECT_THROW(bisect([](double) { return true; }, 0.0, 4.0, 1e-9), Error);
  EXPECT_THROW(bisect([](double) { return false; }, 0.0, 4.0, 1e-9), Error);
  EXPECT_THROW(bisect([](double x) { return x > 1; }, 4.0, 0.0, 1e-9), Error);
  try {
    bisect([](double) { return true; }, 0.0, 4.0, 1e-9);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBracketInvalid);
  }
}

TEST(Bisect, StepCapHoldsForTinyTolerance) {
  int calls = 0;
  bisect(
      [&](double x) {
        ++calls;
        return x >= 1.0 / 3.0;
      },
      0.0, 1e6, 1e-300);
  EXPECT_LE(calls, kMaxBisectionSteps + 2);
}

// Measure synthesis as the feasibility oracle reproduces the LP supremum.
TEST(Bisect, PdtConstantMatchesLp) {
  const PdtInstance inst({{"f1", "f2", "f3"}}, {2.0},
                         {{"a", 1.0, {{1.0, 0.2, 0.0}}},
                          {"b", 0.8, {{0.0, 1.0, 0.3}}},
                          {"c", 1.5, {{0.5, 0.5, 1.0}}}});
  const double tol = 1e-9;
  const double c = bisect(
      [&](double x) { return synthesize_measures(inst, x, 1e-13).status == SynthesisStatus::kFeasible; },
      0.1, 10.0, tol);
  const double lp = summing_sup_pdt(inst).constant;
  EXPECT_NEAR(c, lp, 2 * tol * lp);
}

}  // namespace
}  // namespace summability
