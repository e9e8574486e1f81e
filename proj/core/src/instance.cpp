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

#include "summability/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace summability {

WeightVector WeightVector::from_counts(std::span<const std::size_t> counts) {
  WeightVector out;
  out.weights.reserve(counts.size());
  for (std::size_t c : counts) out.weights.push_back(static_cast<double>(c));
  out.integral = true;
  return out;
}

WeightVector WeightVector::from_reals(std::vector<double> weights) {
  WeightVector out;
  out.integral = true;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorCode::kOutOfRange, "weights must be finite and nonnegative");
    }
    if (w != std::floor(w)) out.integral = false;
  }
  out.weights = std::move(weights);
  return out;
}

WeightVector WeightVector::unit(std::size_t n, std::size_t index) {
  std::vector<std::size_t> counts(n, 0);
  counts.at(index) = 1;
  return from_counts(counts);
}

bool WeightVector::is_zero() const noexcept {
  return std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; });
}

double WeightVector::total() const noexcept {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

SummingInstance::SummingInstance(std::vector<std::string> point_ids,
                                 std::vector<std::string> v_ids,
                                 std::vector<std::string> w_ids, Table s_table, Table r_table)
    : point_ids_(std::move(point_ids)),
      v_ids_(std::move(v_ids)),
      w_ids_(std::move(w_ids)),
      s_table_(std::move(s_table)),
      r_table_(std::move(r_table)) {
  if (point_ids_.empty() || v_ids_.empty() || w_ids_.empty()) {
    throw Error(ErrorCode::kEmptyInstance, "instance needs at least one point, v and w");
  }
  if (s_table_.rows() != point_ids_.size() || s_table_.cols() != v_ids_.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "s table is " + std::to_string(s_table_.rows()) + "x" +
                    std::to_string(s_table_.cols()) + ", expected " +
                    std::to_string(point_ids_.size()) + "x" + std::to_string(v_ids_.size()));
  }
  if (r_table_.rows() != point_ids_.size() || r_table_.cols() != w_ids_.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "r table is " + std::to_string(r_table_.rows()) + "x" +
                    std::to_string(r_table_.cols()) + ", expected " +
                    std::to_string(point_ids_.size()) + "x" + std::to_string(w_ids_.size()));
  }
  for (const Table* table : {&s_table_, &r_table_}) {
    for (double x : table->values()) {
      if (!std::isfinite(x) || x < 0.0) {
        throw Error(ErrorCode::kOutOfRange, "table entries must be finite and nonnegative");
      }
    }
  }
}

namespace {

double weighted_column_max(const Table& table, double exponent, const WeightVector& eta,
                           const char* what) {
  if (eta.size() != table.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": weight vector has length " + std::to_string(eta.size()) +
                    ", instance has " + std::to_string(table.rows()) + " points");
  }
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw Error(ErrorCode::kOutOfRange, std::string(what) + ": exponent must be positive");
  }
  double best = 0.0;
  for (std::size_t c = 0; c < table.cols(); ++c) {
    double sum = 0.0;
    for (std::size_t j = 0; j < table.rows(); ++j) {
      if (eta.weights[j] == 0.0) continue;
      sum += eta.weights[j] * std::pow(table(j, c), exponent);
    }
    best = std::max(best, sum);
  }
  return best;
}

}  // namespace

double lhs_value(const SummingInstance& inst, double q, const WeightVector& eta) {
  return weighted_column_max(inst.s_table(), q, eta, "lhs_value");
}

double rhs_value(const SummingInstance& inst, double p, const WeightVector& eta) {
  return weighted_column_max(inst.r_table(), p, eta, "rhs_value");
}

RatioOutcome evaluate_family(const SummingInstance& inst, double q, double p, double alpha,
                             const WeightVector& eta) {
  RatioOutcome out;
  out.lhs = lhs_value(inst, q, eta);
  out.rhs = rhs_value(inst, p, eta);
  if (out.rhs > 0.0) {
    out.status = RatioStatus::kFinite;
    out.ratio = std::pow(out.lhs, 1.0 / alpha) / out.rhs;
  } else if (out.lhs > 0.0) {
    out.status = RatioStatus::kZeroDenominator;
  } else {
    out.status = RatioStatus::kDegenerate;
  }
  return out;
}

double family_ratio(const SummingInstance& inst, double q, double p, double alpha,
                    const WeightVector& eta) {
  const RatioOutcome outcome = evaluate_family(inst, q, p, alpha, eta);
  switch (outcome.status) {
    case RatioStatus::kFinite:
      return outcome.ratio;
    case RatioStatus::kZeroDenominator:
      throw NotSummingError(ErrorCode::kZeroDenominator,
                            "family has vanishing right-hand side but positive left-hand side",
                            eta);
    case RatioStatus::kDegenerate:
      break;
  }
  throw Error(ErrorCode::kDegenerateFamily, "family has both sides equal to zero");
}

FamilyEnumerator::FamilyEnumerator(std::size_t n, std::size_t budget)
    : budget_(budget), counts_(n, 0) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "FamilyEnumerator: n must be >= 1");
}

bool FamilyEnumerator::next() {
  const std::size_t n = counts_.size();
  if (total_ == 0) {
    if (budget_ == 0) return false;
    total_ = 1;
    counts_[0] = 1;
    return true;
  }
  // Descending-lex successor among compositions of total_ into n parts.
  std::size_t i = n - 1;
  bool found = false;
  while (i > 0) {
    --i;
    if (counts_[i] > 0) {
      found = true;
      break;
    }
  }
  if (found) {
    const std::size_t tail = counts_[n - 1];
    counts_[n - 1] = 0;
    --counts_[i];
    counts_[i + 1] = tail + 1;
    return true;
  }
  if (total_ == budget_) return false;
  ++total_;
  std::fill(counts_.begin(), counts_.end(), 0);
  counts_[0] = total_;
  return true;
}

std::vector<WeightVector> enumerate_families(std::size_t n, std::size_t budget) {
  std::vector<WeightVector> out;
  FamilyEnumerator it(n, budget);
  while (it.next()) out.push_back(it.current());
  return out;
}

std::size_t count_families(std::size_t n, std::size_t budget) {
  // C(n + budget, budget), computed incrementally to stay exact.
  std::size_t c = 1;
  for (std::size_t k = 1; k <= budget; ++k) c = c * (n + k) / k;
  return c - 1;
}

SummingInstance repeat_rows(const SummingInstance& inst, std::span<const std::size_t> counts) {
  if (counts.size() != inst.num_points()) {
    throw Error(ErrorCode::kDimensionMismatch, "repeat_rows: counts length mismatch");
  }
  const std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  std::vector<std::string> ids;
  Table s(total, inst.num_v());
  Table r(total, inst.num_w());
  std::size_t row = 0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    for (std::size_t k = 0; k < counts[j]; ++k, ++row) {
      ids.push_back(inst.point_ids()[j] + "#" + std::to_string(k));
      std::copy(inst.s_table().row(j).begin(), inst.s_table().row(j).end(), s.row(row).begin());
      std::copy(inst.r_table().row(j).begin(), inst.r_table().row(j).end(), r.row(row).begin());
    }
  }
  return SummingInstance(std::move(ids), inst.v_ids(), inst.w_ids(), std::move(s), std::move(r));
}

}  // namespace summability
