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

#ifndef SUMMABILITY_INCLUSION_HPP_
#define SUMMABILITY_INCLUSION_HPP_

#include <cstddef>
#include <vector>

#include "summability/certificate.hpp"
#include "summability/exponents.hpp"
#include "summability/instance.hpp"

namespace summability {

// A summing instance whose points live in a space with a scaling action that
// multiplies both the S- and R-rows by |lambda|. Scaled rows are evaluated
// analytically from `scalar_grid`, never stored.
class MultiplicativeInstance {
 public:
  // Throws Error(kOutOfRange) for an empty grid or non-positive scalars.
  MultiplicativeInstance(SummingInstance base, std::vector<double> scalar_grid);

  const SummingInstance& base() const noexcept { return base_; }
  const std::vector<double>& scalar_grid() const noexcept { return scalar_grid_; }

  // Families range over (row, scalar) pairs, flattened as row * |grid| + g.
  std::size_t num_atoms() const noexcept { return base_.num_points() * scalar_grid_.size(); }

 private:
  SummingInstance base_;
  std::vector<double> scalar_grid_;
};

struct InclusionReport {
  Exponents exponents;
  Certificate premise;
  Certificate predicted;
  // C' * rhs - lhs^(1/alpha) at the worst family (root form for the
  // multiplicative check).
  double worst_slack = 0.0;
  // worst_slack / max(1, C' * rhs); the pass criterion.
  double worst_relative_slack = 0.0;
  WeightVector worst_family;
  std::size_t families_checked = 0;
  // Largest lhs^(1/alpha) / rhs seen, for comparison with the prediction.
  double observed_max_ratio = 0.0;
  bool pass = false;
};

inline constexpr double kInclusionRelativeTolerance = 1e-9;

// Conclusion constant premise_constant^(p2/p1) with alpha from compute_alpha.
// Throws Error(kInadmissibleExponents) or Error(kOutOfRange) for C < 0.
Certificate predict_inclusion(double premise_constant, const Exponents& e);

// Certifies the (q1, p1) constant C with summing_constant_exact, then checks
//   (max_v sum_j eta_j s^q2)^(1/alpha) <= C^(p2/p1) max_w sum_j eta_j r^p2
// on every integer family up to `budget`. Throws Error(kPremiseNotCertified)
// when the premise constant is infinite.
InclusionReport verify_inclusion(const SummingInstance& inst, const Exponents& e,
                                 std::size_t budget);

// Same check against a caller-supplied premise certificate; no
// re-certification. Useful to confirm that an understated premise is caught.
InclusionReport check_inclusion_against(const SummingInstance& inst, const Exponents& e,
                                        std::size_t budget, const Certificate& premise);

// Root-form constant
//   C = sup (max_v sum_j |l_j|^q1 s^q1)^(1/q1) / (max_w sum_j |l_j|^p1 r^p1)^(1/p1)
// over every choice of scalars l_j. With a_j = |l_j|^p1 the denominator is a
// polytope constraint and the numerator a convex function of a, so the
// supremum sits at a vertex: an LP when q1 = p1, explicit vertex enumeration
// otherwise. Requires 1 <= p1 <= q1. Throws NotSummingError(kNotSumming).
Certificate multiplicative_premise(const SummingInstance& base, double q1, double p1);

// Checks, with the SAME constant C as the premise (no powering, no alpha),
//   (max_v sum eta (l s)^q2)^(1/q2) <= C (max_w sum eta (l r)^p2)^(1/p2)
// over every family of (row, scalar) pairs up to `budget`.
InclusionReport verify_multilinear_inclusion(const MultiplicativeInstance& minst,
                                             const Exponents& e, std::size_t budget);

InclusionReport check_multilinear_against(const MultiplicativeInstance& minst,
                                          const Exponents& e, std::size_t budget,
                                          const Certificate& premise);

}  // namespace summability

#endif  // SUMMABILITY_INCLUSION_HPP_
