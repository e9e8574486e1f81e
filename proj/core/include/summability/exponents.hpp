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

#ifndef SUMMABILITY_EXPONENTS_HPP_
#define SUMMABILITY_EXPONENTS_HPP_

#include <span>
#include <vector>

namespace summability {

// Summation exponents of a pair of summing inequalities: the premise uses
// (p1, q1), the conclusion (p2, q2).
struct Exponents {
  double p1 = 1.0;
  double q1 = 1.0;
  double p2 = 1.0;
  double q2 = 1.0;

  friend bool operator==(const Exponents&, const Exponents&) = default;
};

struct AlphaParams {
  // Power applied to the left-hand side of the conclusion, as 1/alpha.
  double alpha = 1.0;
  // The premise constant C becomes C^constant_exponent in the conclusion.
  double constant_exponent = 1.0;
};

// Exponents p_1..p_t together with p given by 1/p = sum_j 1/p_j.
struct HarmonicExponents {
  std::vector<double> parts;
  double combined = 1.0;
};

// Exact comparisons, no tolerance:
//   1 <= p1, p1 <= q1, p2 <= q2, p1 <= p2, q1 <= q2,
//   1/p1 - 1/q1 <= 1/p2 - 1/q2.
// Non-finite or non-positive fields make the tuple inadmissible.
bool check_admissible(const Exponents& e);

// alpha = q2*p1 / (q1*p2) and constant exponent p2/p1.
// Throws Error(kInadmissibleExponents).
AlphaParams compute_alpha(const Exponents& e);

// Throws Error(kEmptyParts) on an empty list and Error(kOutOfRange) on a
// non-positive or non-finite part.
HarmonicExponents harmonic_combine(std::span<const double> parts);

// Signed gap  sum_j q_j^{p_j}/p_j  -  (1/p) prod_j q_j^p  of the weighted
// AM-GM inequality, with 1/p = sum_j 1/p_j. Nonnegative up to rounding.
// Throws Error(kLengthMismatch).
double am_gm_gap(std::span<const double> parts, std::span<const double> values);

// q* with 1/q + 1/q* = 1. Throws Error(kOutOfRange) for q <= 1.
double conjugate_exponent(double q);

}  // namespace summability

#endif  // SUMMABILITY_EXPONENTS_HPP_
