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

#ifndef SUMMABILITY_INSTANCE_HPP_
#define SUMMABILITY_INSTANCE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "summability/error.hpp"
#include "summability/table.hpp"

namespace summability {

// Nonnegative weights eta_j over the points of an instance. Integer weights
// encode a finite family in which point j is repeated eta_j times.
struct WeightVector {
  std::vector<double> weights;
  bool integral = false;

  static WeightVector from_counts(std::span<const std::size_t> counts);
  // Sets `integral` from the entries. Throws Error(kOutOfRange) on negative or
  // non-finite weights.
  static WeightVector from_reals(std::vector<double> weights);
  static WeightVector unit(std::size_t n, std::size_t index);

  std::size_t size() const noexcept { return weights.size(); }
  bool is_zero() const noexcept;
  double total() const noexcept;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

// Raised when a family has a vanishing right-hand side but a positive
// left-hand side: no finite constant can exist. Carries the offending family.
class NotSummingError : public Error {
 public:
  NotSummingError(ErrorCode code, const std::string& message, WeightVector witness)
      : Error(code, message), witness_(std::move(witness)) {}

  const WeightVector& witness() const noexcept { return witness_; }

 private:
  WeightVector witness_;
};

// Finite tabulation of the kernels S(f, z_j, v) (s_table, n x |V|) and
// R(z_j, w) (r_table, n x |W|) over n points z_1..z_n.
class SummingInstance {
 public:
  // Validates shapes and entries: n, |V|, |W| >= 1, all entries finite and
  // nonnegative. Throws Error(kEmptyInstance), Error(kShapeMismatch) or
  // Error(kOutOfRange).
  SummingInstance(std::vector<std::string> point_ids, std::vector<std::string> v_ids,
                  std::vector<std::string> w_ids, Table s_table, Table r_table);

  std::size_t num_points() const noexcept { return point_ids_.size(); }
  std::size_t num_v() const noexcept { return v_ids_.size(); }
  std::size_t num_w() const noexcept { return w_ids_.size(); }

  const std::vector<std::string>& point_ids() const noexcept { return point_ids_; }
  const std::vector<std::string>& v_ids() const noexcept { return v_ids_; }
  const std::vector<std::string>& w_ids() const noexcept { return w_ids_; }
  const Table& s_table() const noexcept { return s_table_; }
  const Table& r_table() const noexcept { return r_table_; }

  friend bool operator==(const SummingInstance&, const SummingInstance&) = default;

 private:
  std::vector<std::string> point_ids_;
  std::vector<std::string> v_ids_;
  std::vector<std::string> w_ids_;
  Table s_table_;
  Table r_table_;
};

// max_v sum_j eta_j * s(j, v)^q. Throws Error(kDimensionMismatch).
double lhs_value(const SummingInstance& inst, double q, const WeightVector& eta);
// max_w sum_j eta_j * r(j, w)^p. Throws Error(kDimensionMismatch).
double rhs_value(const SummingInstance& inst, double p, const WeightVector& eta);

enum class RatioStatus { kFinite, kZeroDenominator, kDegenerate };

struct RatioOutcome {
  RatioStatus status = RatioStatus::kDegenerate;
  double lhs = 0.0;
  double rhs = 0.0;
  // lhs^{1/alpha} / rhs; meaningful only when status == kFinite.
  double ratio = 0.0;
};

// Non-throwing evaluation of a family; used by the enumerating searches.
RatioOutcome evaluate_family(const SummingInstance& inst, double q, double p, double alpha,
                             const WeightVector& eta);

// lhs^{1/alpha} / rhs. Throws NotSummingError(kZeroDenominator) when rhs = 0 < lhs
// and Error(kDegenerateFamily) when both vanish.
double family_ratio(const SummingInstance& inst, double q, double p, double alpha,
                    const WeightVector& eta);

// Integer multiplicity vectors eta >= 0 with 1 <= sum eta <= budget, each
// once. Order: by total multiplicity, then descending lexicographic, e.g. for
// n = 2, budget = 2: (1,0) (0,1) (2,0) (1,1) (0,2).
class FamilyEnumerator {
 public:
  FamilyEnumerator(std::size_t n, std::size_t budget);

  // Advances to the next family; false once exhausted. Call before the
  // first access.
  bool next();

  std::span<const std::size_t> counts() const noexcept { return counts_; }
  std::size_t total() const noexcept { return total_; }
  WeightVector current() const { return WeightVector::from_counts(counts_); }

 private:
  std::size_t budget_;
  std::size_t total_ = 0;
  std::vector<std::size_t> counts_;
};

std::vector<WeightVector> enumerate_families(std::size_t n, std::size_t budget);

// C(n + budget, n) - 1.
std::size_t count_families(std::size_t n, std::size_t budget);

// Instance in which row j of `inst` appears counts[j] times.
SummingInstance repeat_rows(const SummingInstance& inst, std::span<const std::size_t> counts);

}  // namespace summability

#endif  // SUMMABILITY_INSTANCE_HPP_
