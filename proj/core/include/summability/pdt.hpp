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

#ifndef SUMMABILITY_PDT_HPP_
#define SUMMABILITY_PDT_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "summability/certificate.hpp"
#include "summability/exponents.hpp"
#include "summability/instance.hpp"

namespace summability {

struct PdtPoint {
  std::string label;
  double s = 0.0;
  // r[k][a] is kernel k evaluated at atom a of atom set k.
  std::vector<std::vector<double>> r;

  friend bool operator==(const PdtPoint&, const PdtPoint&) = default;
};

class PdtInstance {
 public:
  // Throws Error(kEmptyInstance) without kernels or points, Error(kShapeMismatch)
  // when a point's tables disagree with the atom sets or exponents, and
  // Error(kOutOfRange) for negative or non-finite entries. `exponents.combined`
  // is recomputed from the parts.
  PdtInstance(std::vector<std::vector<std::string>> atom_sets, std::vector<double> parts,
              std::vector<PdtPoint> points, bool homogeneous = true, bool approximate = false);

  std::size_t t() const noexcept { return atom_sets_.size(); }
  std::size_t num_points() const noexcept { return points_.size(); }
  const std::vector<std::vector<std::string>>& atom_sets() const noexcept { return atom_sets_; }
  const HarmonicExponents& exponents() const noexcept { return exponents_; }
  const std::vector<PdtPoint>& points() const noexcept { return points_; }
  bool homogeneous() const noexcept { return homogeneous_; }
  // Atom sets are samples of a continuous compactum.
  bool approximate() const noexcept { return approximate_; }

  friend bool operator==(const PdtInstance& a, const PdtInstance& b) {
    return a.atom_sets_ == b.atom_sets_ && a.exponents_.parts == b.exponents_.parts &&
           a.points_ == b.points_ && a.homogeneous_ == b.homogeneous_ &&
           a.approximate_ == b.approximate_;
  }

 private:
  std::vector<std::vector<std::string>> atom_sets_;
  HarmonicExponents exponents_;
  std::vector<PdtPoint> points_;
  bool homogeneous_;
  bool approximate_;
};

inline constexpr double kDominationTolerance = 1e-8;

struct PointSlack {
  std::string label;
  std::vector<double> tau;
  double bound = 0.0;
  double slack = 0.0;
};

struct SlackReport {
  std::vector<PointSlack> per_point;
  double min_slack = 0.0;
  std::string argmin_point;
  std::size_t argmin_index = 0;
  // Every point has slack >= -tolerance * max(1, bound).
  bool pass = false;
};

// tau[k] = (sum_a mu_k(a) r_k(a)^{p_k})^{1/p_k} for one point.
std::vector<double> moments(const PdtInstance& inst, const std::vector<MeasureVector>& measures,
                            std::size_t point);

// Throws Error(kMeasureShapeMismatch) unless there is one valid measure per
// kernel whose atoms match the atom set.
SlackReport verify_domination(const PdtInstance& inst, double constant,
                              const std::vector<MeasureVector>& measures,
                              double tolerance = kDominationTolerance);

enum class SynthesisStatus { kFeasible, kInfeasible, kIterationLimit };

std::string_view to_string(SynthesisStatus status);

// A distribution over data points plus reference measures. Against the
// log-objective F(mu) = max_d [log s_d - log C - sum_k log tau_k(d)], the
// pair proves min_mu F >= lower_bound; a positive bound rules out every
// measure tuple at this constant.
struct InfeasibilityWitness {
  std::vector<double> point_weights;
  std::vector<MeasureVector> reference;
  double lower_bound = 0.0;
};

struct SynthesisResult {
  SynthesisStatus status = SynthesisStatus::kIterationLimit;
  std::vector<MeasureVector> measures;
  // max_d of the log-objective at `measures`; <= 0 means exact domination.
  double residual = 0.0;
  SlackReport report;
  InfeasibilityWitness witness;
  std::size_t iterations = 0;
};

inline constexpr std::size_t kDefaultSynthesisIterations = 20000;

// Throws Error(kInvalidArgument) for non-homogeneous instances or C <= 0.
// With at most one kernel that has more than one atom the problem is an LP;
// otherwise entropic mirror descent on a smoothed log-objective is used.
SynthesisResult synthesize_measures(const PdtInstance& inst, double constant,
                                    double tol = kDominationTolerance,
                                    std::size_t max_iters = kDefaultSynthesisIterations);

// Recomputes the bound carried by a witness from scratch. Returns -infinity
// when the weights are unusable.
double infeasibility_lower_bound(const PdtInstance& inst, double constant,
                                 std::span<const double> point_weights,
                                 const std::vector<MeasureVector>& reference);

// Least constant admitting dominating measures, to relative `tol`. Throws
// Error(kNotDominated) when a point with s > 0 has a vanishing moment under
// uniform measures.
Certificate best_constant_duality(const PdtInstance& inst, double tol = 1e-9);

struct PdtFamilyOutcome {
  RatioStatus status = RatioStatus::kDegenerate;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

// lhs = (sum_d eta_d s_d^p)^{1/p}, rhs = prod_k max_a (sum_d eta_d r_k(a,d)^{p_k})^{1/p_k}.
PdtFamilyOutcome evaluate_pdt_family(const PdtInstance& inst, const WeightVector& eta);

// Largest family ratio over integer families of total multiplicity <= budget.
// Throws NotSummingError(kNotDominated) with the family when rhs = 0 < lhs.
Certificate summing_lb_pdt(const PdtInstance& inst, std::size_t budget);

// Supremum of the family ratio over real weights, exact by LP. Only for t = 1.
Certificate summing_sup_pdt(const PdtInstance& inst);

struct AmProductReport {
  // Largest relative difference between the rescaled arithmetic-mean bound
  // and the product bound.
  double gap = 0.0;
  // Smallest (rescaled bound - s) over points.
  double min_slack = 0.0;
};

AmProductReport am_to_product_check(const PdtInstance& inst, double constant,
                                    const std::vector<MeasureVector>& measures);

struct RoundtripReport {
  double min_slack = 0.0;
  double min_relative_slack = 0.0;
  WeightVector worst_family;
  std::size_t families_checked = 0;
  bool pass = true;
};

// Checks C * rhs - lhs over families up to `budget`. Throws Error(kNotDominated)
// when the measures do not dominate at C.
RoundtripReport roundtrip_check(const PdtInstance& inst, double constant,
                                const std::vector<MeasureVector>& measures, std::size_t budget);

// Uniform measures on every atom set.
std::vector<MeasureVector> uniform_measures(const PdtInstance& inst);

}  // namespace summability

#endif  // SUMMABILITY_PDT_HPP_
