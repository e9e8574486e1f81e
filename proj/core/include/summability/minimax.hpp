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

#ifndef SUMMABILITY_MINIMAX_HPP_
#define SUMMABILITY_MINIMAX_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "summability/table.hpp"

namespace summability {

// Payoff of a two-player zero-sum game over a pair of probability simplices.
// The row player maximizes. Implementations must be deterministic.
class PayoffOracle {
 public:
  virtual ~PayoffOracle() = default;

  virtual std::size_t row_dim() const = 0;
  virtual std::size_t col_dim() const = 0;
  virtual double value(std::span<const double> row, std::span<const double> col) const = 0;

  // Payoff of each pure row action against `col`. The default evaluates
  // value() at every vertex; bilinear games override with a product.
  virtual void row_payoffs(std::span<const double> col, std::span<double> out) const;
  virtual void col_payoffs(std::span<const double> row, std::span<double> out) const;
};

class MatrixPayoff final : public PayoffOracle {
 public:
  explicit MatrixPayoff(Table payoff) : payoff_(std::move(payoff)) {}

  std::size_t row_dim() const override { return payoff_.rows(); }
  std::size_t col_dim() const override { return payoff_.cols(); }
  double value(std::span<const double> row, std::span<const double> col) const override;
  void row_payoffs(std::span<const double> col, std::span<double> out) const override;
  void col_payoffs(std::span<const double> row, std::span<double> out) const override;

  const Table& matrix() const noexcept { return payoff_; }

 private:
  Table payoff_;
};

struct MinimaxProblem {
  const PayoffOracle* oracle = nullptr;
  std::size_t max_iters = 100000;
  double tolerance = 1e-4;
};

enum class MinimaxStatus { kConverged, kIterationLimit };

struct MinimaxResult {
  MinimaxStatus status = MinimaxStatus::kIterationLimit;
  double value = 0.0;
  std::vector<double> row_strategy;
  std::vector<double> col_strategy;
  // Duality gap max_i payoff(e_i, col) - min_j payoff(row, e_j) of the
  // reported strategies; the game value lies within it.
  double residual = 0.0;
  std::size_t iterations = 0;
  // Best residual seen at each 100-iteration checkpoint (nonincreasing).
  std::vector<double> residual_trace;
};

// Optimistic multiplicative weights for both players from uniform
// strategies. The step is max(1/2, sqrt(8 ln(dim) / max_iters)) over the
// payoff range. At each checkpoint the averaged and the last iterates are
// scored by duality gap and the better pair is kept. Running out of
// iterations is not an error: the best strategies found so far come back
// with status kIterationLimit.
MinimaxResult mwu_minimax(const MinimaxProblem& problem);

}  // namespace summability

#endif  // SUMMABILITY_MINIMAX_HPP_
