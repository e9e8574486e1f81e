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

#include "summability/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "summability/error.hpp"

namespace summability {
namespace {

constexpr double kPivotEps = 1e-11;

// Tableau over columns [original | slack | artificial] plus a right-hand side.
// `reduced` holds z_j - c_j for a maximization objective; the last entry is
// the objective value.
class Tableau {
 public:
  Tableau(const LpProblem& lp)
      : m_(lp.bounds.size()),
        n_(lp.objective.size()),
        num_art_(static_cast<std::size_t>(
            std::count_if(lp.bounds.begin(), lp.bounds.end(), [](double b) { return b < 0.0; }))),
        cols_(n_ + m_ + num_art_),
        cells_(m_ * (cols_ + 1), 0.0),
        basis_(m_),
        reduced_(cols_ + 1, 0.0) {
    std::size_t art = n_ + m_;
    for (std::size_t i = 0; i < m_; ++i) {
      const double sign = lp.bounds[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = sign * lp.constraint_matrix(i, j);
      at(i, n_ + i) = sign;
      rhs(i) = sign * lp.bounds[i];
      if (sign < 0.0) {
        at(i, art) = 1.0;
        basis_[i] = art++;
      } else {
        basis_[i] = n_ + i;
      }
    }
  }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return cols_; }
  std::size_t num_original() const { return n_; }
  std::size_t first_artificial() const { return n_ + m_; }
  bool is_artificial(std::size_t j) const { return j >= n_ + m_; }

  double& at(std::size_t i, std::size_t j) { return cells_[i * (cols_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return cells_[i * (cols_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, cols_); }
  double rhs(std::size_t i) const { return at(i, cols_); }
  std::size_t basis(std::size_t i) const { return basis_[i]; }
  double reduced(std::size_t j) const { return reduced_[j]; }
  double objective_value() const { return reduced_[cols_]; }

  // Recomputes the reduced-cost row for per-column costs (maximize).
  void set_costs(const std::vector<double>& costs) {
    std::fill(reduced_.begin(), reduced_.end(), 0.0);
    for (std::size_t j = 0; j < cols_; ++j) reduced_[j] = -costs[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = costs[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) reduced_[j] += cb * at(i, j);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / at(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) at(r, j) *= inv;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double factor = at(i, c);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= factor * at(r, j);
      at(i, c) = 0.0;
    }
    const double factor = reduced_[c];
    if (factor != 0.0) {
      for (std::size_t j = 0; j <= cols_; ++j) reduced_[j] -= factor * at(r, j);
      reduced_[c] = 0.0;
    }
    basis_[r] = c;
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::size_t num_art_;
  std::size_t cols_;
  std::vector<double> cells_;
  std::vector<std::size_t> basis_;
  std::vector<double> reduced_;
};

enum class PhaseOutcome { kOptimal, kUnbounded };

// Bland's rule: lowest-index improving column, ratio ties broken by the
// lowest-index basic variable.
PhaseOutcome run_phase(Tableau& t, std::size_t allowed_cols, std::size_t& pivots,
                       std::size_t pivot_limit) {
  while (true) {
    std::size_t enter = allowed_cols;
    for (std::size_t j = 0; j < allowed_cols; ++j) {
      if (t.reduced(j) < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter == allowed_cols) return PhaseOutcome::kOptimal;

    std::size_t leave = t.rows();
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, enter);
      if (a <= kPivotEps) continue;
      const double ratio = std::max(t.rhs(i), 0.0) / a;
      const double tie = 1e-14 * std::max(1.0, best_ratio);
      if (leave == t.rows() || ratio < best_ratio - tie) {
        best_ratio = ratio;
        leave = i;
      } else if (ratio <= best_ratio + tie && t.basis(i) < t.basis(leave)) {
        best_ratio = std::min(best_ratio, ratio);
        leave = i;
      }
    }
    if (leave == t.rows()) return PhaseOutcome::kUnbounded;
    if (++pivots > pivot_limit) {
      throw Error(ErrorCode::kNumericalFailure,
                  "solve_lp: pivot limit " + std::to_string(pivot_limit) + " exceeded");
    }
    t.pivot(leave, enter);
  }
}

}  // namespace

LpResult solve_lp(const LpProblem& problem) {
  const std::size_t m = problem.bounds.size();
  const std::size_t n = problem.objective.size();
  if (m == 0 || n == 0 || problem.constraint_matrix.rows() != m ||
      problem.constraint_matrix.cols() != n) {
    throw Error(ErrorCode::kShapeMismatch, "solve_lp: inconsistent problem dimensions");
  }
  for (double x : problem.constraint_matrix.values()) {
    if (!std::isfinite(x)) throw Error(ErrorCode::kOutOfRange, "solve_lp: non-finite entry");
  }

  Tableau t(problem);
  const std::size_t pivot_limit = 50000 + 100 * (m + n);
  LpResult result;

  double scale = 1.0;
  for (double b : problem.bounds) scale = std::max(scale, std::abs(b));

  if (t.cols() > t.first_artificial()) {
    std::vector<double> phase1(t.cols(), 0.0);
    for (std::size_t j = t.first_artificial(); j < t.cols(); ++j) phase1[j] = -1.0;
    t.set_costs(phase1);
    run_phase(t, t.cols(), result.pivots, pivot_limit);
    if (t.objective_value() < -1e-9 * scale) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    // Drive remaining artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (!t.is_artificial(t.basis(i))) continue;
      for (std::size_t j = 0; j < t.first_artificial(); ++j) {
        if (std::abs(t.at(i, j)) > 1e-9) {
          t.pivot(i, j);
          break;
        }
      }
    }
  }

  std::vector<double> costs(t.cols(), 0.0);
  std::copy(problem.objective.begin(), problem.objective.end(), costs.begin());
  t.set_costs(costs);
  if (run_phase(t, t.first_artificial(), result.pivots, pivot_limit) ==
      PhaseOutcome::kUnbounded) {
    result.status = LpStatus::kUnbounded;
    return result;
  }

  result.status = LpStatus::kOptimal;
  result.solution.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis(i) < n) result.solution[t.basis(i)] = std::max(0.0, t.rhs(i));
  }
  result.duals.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) result.duals[i] = std::max(0.0, t.reduced(n + i));
  result.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) result.value += problem.objective[j] * result.solution[j];
  return result;
}

}  // namespace summability
