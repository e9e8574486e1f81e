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

#ifndef SUMMABILITY_LP_HPP_
#define SUMMABILITY_LP_HPP_

#include <cstddef>
#include <vector>

#include "summability/table.hpp"

namespace summability {

// maximize objective . x  subject to  constraint_matrix * x <= bounds, x >= 0.
struct LpProblem {
  std::vector<double> objective;
  Table constraint_matrix;
  std::vector<double> bounds;
};

enum class LpStatus { kOptimal, kUnbounded, kInfeasible };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::vector<double> solution;
  // Multipliers of the constraints (nonnegative at optimum); the dual
  // minimize bounds . y  s.t.  A^T y >= objective, y >= 0  attains `value`.
  std::vector<double> duals;
  std::size_t pivots = 0;
};

// Dense two-phase tableau simplex with Bland's rule, so repeated solves of the
// same problem pick the same vertex. Throws Error(kShapeMismatch) on
// inconsistent sizes and Error(kNumericalFailure) when the pivot budget runs out.
LpResult solve_lp(const LpProblem& problem);

}  // namespace summability

#endif  // SUMMABILITY_LP_HPP_
