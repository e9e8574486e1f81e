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

#include "summability/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "summability/error.hpp"

namespace summability {

void PayoffOracle::row_payoffs(std::span<const double> col, std::span<double> out) const {
  std::vector<double> pure(row_dim(), 0.0);
  for (std::size_t i = 0; i < row_dim(); ++i) {
    pure[i] = 1.0;
    out[i] = value(pure, col);
    pure[i] = 0.0;
  }
}

void PayoffOracle::col_payoffs(std::span<const double> row, std::span<double> out) const {
  std::vector<double> pure(col_dim(), 0.0);
  for (std::size_t j = 0; j < col_dim(); ++j) {
    pure[j] = 1.0;
    out[j] = value(row, pure);
    pure[j] = 0.0;
  }
}

double MatrixPayoff::value(std::span<const double> row, std::span<const double> col) const {
  double total = 0.0;
  for (std::size_t i = 0; i < payoff_.rows(); ++i) {
    if (row[i] == 0.0) continue;
    double inner = 0.0;
    for (std::size_t j = 0; j < payoff_.cols(); ++j) inner += payoff_(i, j) * col[j];
    total += row[i] * inner;
  }
  return total;
}

void MatrixPayoff::row_payoffs(std::span<const double> col, std::span<double> out) const {
  for (std::size_t i = 0; i < payoff_.rows(); ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < payoff_.cols(); ++j) inner += payoff_(i, j) * col[j];
    out[i] = inner;
  }
}

void MatrixPayoff::col_payoffs(std::span<const double> row, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < payoff_.rows(); ++i) {
    if (row[i] == 0.0) continue;
    for (std::size_t j = 0; j < payoff_.cols(); ++j) out[j] += row[i] * payoff_(i, j);
  }
}

namespace {

// Normalized exp(scale * scores), shifted by the max for stability.
void softmax(std::span<const double> scores, double scale, std::span<double> out) {
  const double top = *std::max_element(scores.begin(), scores.end());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i] = std::exp(scale * (scores[i] - top));
    total += out[i];
  }
  for (double& x : out) x /= total;
}

double duality_gap(const PayoffOracle& oracle, std::span<const double> row,
                   std::span<const double> col, std::vector<double>& row_buf,
                   std::vector<double>& col_buf) {
  oracle.row_payoffs(col, row_buf);
  oracle.col_payoffs(row, col_buf);
  return *std::max_element(row_buf.begin(), row_buf.end()) -
         *std::min_element(col_buf.begin(), col_buf.end());
}

}  // namespace

MinimaxResult mwu_minimax(const MinimaxProblem& problem) {
  if (problem.oracle == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "mwu_minimax: missing payoff oracle");
  }
  const PayoffOracle& oracle = *problem.oracle;
  const std::size_t rows = oracle.row_dim();
  const std::size_t cols = oracle.col_dim();
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::kInvalidArgument, "mwu_minimax: empty strategy set");
  }

  // Payoff range over pure strategy pairs sets the step scale.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  {
    std::vector<double> pure_row(rows, 0.0);
    std::vector<double> buf(cols);
    for (std::size_t i = 0; i < rows; ++i) {
      pure_row[i] = 1.0;
      oracle.col_payoffs(pure_row, buf);
      pure_row[i] = 0.0;
      for (double v : buf) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  const double range = std::max(hi - lo, 1e-300);
  // Optimistic hedge tolerates a constant step; the horizon-tuned step of
  // plain hedge is kept as a floor for very short runs.
  const std::size_t horizon = std::max<std::size_t>(problem.max_iters, 1);
  const double dim = static_cast<double>(std::max<std::size_t>({rows, cols, 2}));
  const double step = std::max(0.5, std::sqrt(8.0 * std::log(dim) / static_cast<double>(horizon))) / range;

  std::vector<double> row(rows, 1.0 / static_cast<double>(rows));
  std::vector<double> col(cols, 1.0 / static_cast<double>(cols));
  std::vector<double> row_score(rows, 0.0);
  std::vector<double> col_score(cols, 0.0);
  std::vector<double> row_guess(rows);
  std::vector<double> col_guess(cols);
  std::vector<double> row_sum(rows, 0.0);
  std::vector<double> col_sum(cols, 0.0);
  std::vector<double> row_pay(rows);
  std::vector<double> col_pay(cols);
  std::vector<double> avg_row(rows);
  std::vector<double> avg_col(cols);

  MinimaxResult result;
  result.row_strategy = row;
  result.col_strategy = col;
  result.residual = duality_gap(oracle, row, col, row_pay, col_pay);
  result.residual_trace.push_back(result.residual);
  if (result.residual <= problem.tolerance) {
    result.status = MinimaxStatus::kConverged;
    result.value = oracle.value(row, col);
    return result;
  }

  constexpr std::size_t kCheckpoint = 100;
  for (std::size_t it = 1; it <= problem.max_iters; ++it) {
    for (std::size_t i = 0; i < rows; ++i) row_sum[i] += row[i];
    for (std::size_t j = 0; j < cols; ++j) col_sum[j] += col[j];
    oracle.row_payoffs(col, row_pay);
    oracle.col_payoffs(row, col_pay);
    for (std::size_t i = 0; i < rows; ++i) {
      row_score[i] += row_pay[i];
      row_guess[i] = row_score[i] + row_pay[i];
    }
    for (std::size_t j = 0; j < cols; ++j) {
      col_score[j] -= col_pay[j];
      col_guess[j] = col_score[j] - col_pay[j];
    }
    softmax(row_guess, step, row);
    softmax(col_guess, step, col);
    result.iterations = it;

    if (it % kCheckpoint == 0 || it == problem.max_iters) {
      const double n = static_cast<double>(it);
      for (std::size_t i = 0; i < rows; ++i) avg_row[i] = row_sum[i] / n;
      for (std::size_t j = 0; j < cols; ++j) avg_col[j] = col_sum[j] / n;
      std::vector<double> rbuf(rows), cbuf(cols);
      const double gap = duality_gap(oracle, avg_row, avg_col, rbuf, cbuf);
      if (gap < result.residual) {
        result.residual = gap;
        result.row_strategy = avg_row;
        result.col_strategy = avg_col;
      }
      const double last_gap = duality_gap(oracle, row, col, rbuf, cbuf);
      if (last_gap < result.residual) {
        result.residual = last_gap;
        result.row_strategy = row;
        result.col_strategy = col;
      }
      result.residual_trace.push_back(result.residual);
      if (result.residual <= problem.tolerance) {
        result.status = MinimaxStatus::kConverged;
        break;
      }
    }
  }
  result.value = oracle.value(result.row_strategy, result.col_strategy);
  return result;
}

}  // namespace summability
