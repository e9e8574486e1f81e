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

#ifndef SUMMABILITY_SUMMING_HPP_
#define SUMMABILITY_SUMMING_HPP_

#include <cstddef>
#include <cstdint>

#include "summability/certificate.hpp"
#include "summability/instance.hpp"

namespace summability {

inline constexpr std::size_t kDefaultFamilyBudget = 8;

// Best constant C in
//   max_v sum_j eta_j s(j,v)^q  <=  C max_w sum_j eta_j r(j,w)^p
// over all real eta >= 0. The ratio is homogeneous of degree zero in eta, so
// this is one LP per column v (maximize the v-sum subject to every w-sum <= 1)
// and equals the supremum over integer families. Ties among columns and LP
// vertices resolve to the lowest index.
//
// Requires q, p >= 1 (Error(kOutOfRange)). Throws NotSummingError(kNotSumming)
// carrying a one-point witness when some point has s > 0 but r = 0 everywhere.
Certificate summing_constant_exact(const SummingInstance& inst, double q, double p);

// max of family_ratio over every integer family of total multiplicity
// <= budget (degenerate families skipped). A lower bound on the best constant;
// for alpha != 1 the only meaningful one. Throws NotSummingError(kNotSumming)
// with the first family whose right-hand side vanishes.
Certificate summing_constant_bruteforce(const SummingInstance& inst, double q, double p,
                                        double alpha, std::size_t budget);

// Integer family proportional to `eta` up to rounding: the largest weight
// maps to `denominator`.
WeightVector clear_denominators(const WeightVector& eta, std::uint64_t denominator);

}  // namespace summability

#endif  // SUMMABILITY_SUMMING_HPP_
