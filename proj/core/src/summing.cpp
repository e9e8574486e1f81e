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

#include "summability/summing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "summability/error.hpp"
#include "summability/lp.hpp"

namespace summability {
namespace {

Table powered(const Table& table, double exponent) {
  Table out(table.rows(), table.cols());
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.cols(); ++c) out(r, c) = std::pow(table(r, c), exponent);
  }
  return out;
}

bool row_is_zero(const Table& table, std::size_t r) {
  const auto row = table.row(r);
  return std::all_of(row.begin(), row.end(), [](double x) { return x == 0.0; });
}

void require_exponent(double x, const char* name) {
  if (!(x >= 1.0) || !std::isfinite(x)) {
    throw Error(ErrorCode::kOutOfRange,
                std::string(name) + " = " + std::to_string(x) + " must be a finite value >= 1");
  }
}

}  // namespace

Certificate summing_constant_exact(const SummingInstance& inst, double q, double p) {
  require_exponent(q, "q");
  require_exponent(p, "p");
  const std::size_t n = inst.num_points();
  for (std::size_t j = 0; j < n; ++j) {
    if (!row_is_zero(inst.s_table(), j) && row_is_zero(inst.r_table(), j)) {
      throw NotSummingError(ErrorCode::kNotSumming,
                            "point '" + inst.point_ids()[j] +
                                "' has positive S but vanishing R for every w",
                            WeightVector::unit(n, j));
    }
  }

  const Table s_pow = powered(inst.s_table(), q);
  const Table r_pow = powered(inst.r_table(), p);

  LpProblem lp;
  lp.constraint_matrix = Table(inst.num_w(), n);
  for (std::size_t w = 0; w < inst.num_w(); ++w) {
    for (std::size_t j = 0; j < n; ++j) lp.constraint_matrix(w, j) = r_pow(j, w);
  }
  lp.bounds.assign(inst.num_w(), 1.0);
  lp.objective.assign(n, 0.0);

  Certificate cert;
  cert.kind = CertificateKind::kExactLP;
  cert.metadata.q = q;
  cert.metadata.p = p;
  cert.metadata.alpha = 1.0;
  double best = -1.0;
  std::vector<double> best_eta;
  for (std::size_t v = 0; v < inst.num_v(); ++v) {
    for (std::size_t j = 0; j < n; ++j) lp.objective[j] = s_pow(j, v);
    const LpResult result = solve_lp(lp);
    if (result.status == LpStatus::kUnbounded) {
      // Cannot happen after the row screen above, barring rounding.
      throw Error(ErrorCode::kNumericalFailure, "summing LP unexpectedly unbounded");
    }
    if (result.status != LpStatus::kOptimal) {
      throw Error(ErrorCode::kNumericalFailure, "summing LP reported infeasible");
    }
    if (result.value > best) {
      best = result.value;
      best_eta = result.solution;
    }
  }
  cert.constant = std::max(best, 0.0);

  WeightVector eta = WeightVector::from_reals(best_eta);
  if (eta.is_zero()) {
    // All S vanish: any family with a positive right-hand side attains 0.
    for (std::size_t j = 0; j < n; ++j) {
      if (!row_is_zero(inst.r_table(), j)) {
        cert.witness = WeightVector::unit(n, j);
        break;
      }
    }
    return cert;
  }
  const RatioOutcome outcome = evaluate_family(inst, q, p, 1.0, eta);
  if (outcome.status == RatioStatus::kFinite) cert.slack = cert.constant - outcome.ratio;
  cert.witness = std::move(eta);
  return cert;
}

Certificate summing_constant_bruteforce(const SummingInstance& inst, double q, double p,
                                        double alpha, std::size_t budget) {
  if (budget == 0) throw Error(ErrorCode::kOutOfRange, "budget must be >= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kOutOfRange, "alpha must be positive");
  }
  const std::size_t n = inst.num_points();
  const Table s_pow = powered(inst.s_table(), q);
  const Table r_pow = powered(inst.r_table(), p);

  Certificate cert;
  cert.kind = CertificateKind::kBruteForceLowerBound;
  cert.metadata.q = q;
  cert.metadata.p = p;
  cert.metadata.alpha = alpha;
  cert.metadata.budget = budget;

  double best = 0.0;
  bool have_best = false;
  FamilyEnumerator families(n, budget);
  std::size_t checked = 0;
  while (families.next()) {
    ++checked;
    const auto counts = families.counts();
    double lhs = 0.0;
    for (std::size_t v = 0; v < inst.num_v(); ++v) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) sum += static_cast<double>(counts[j]) * s_pow(j, v);
      lhs = std::max(lhs, sum);
    }
    double rhs = 0.0;
    for (std::size_t w = 0; w < inst.num_w(); ++w) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) sum += static_cast<double>(counts[j]) * r_pow(j, w);
      rhs = std::max(rhs, sum);
    }
    if (rhs == 0.0) {
      if (lhs > 0.0) {
        throw NotSummingError(ErrorCode::kNotSumming,
                              "family with vanishing right-hand side and positive left-hand side",
                              families.current());
      }
      continue;
    }
    const double ratio = std::pow(lhs, 1.0 / alpha) / rhs;
    if (!have_best || ratio > best) {
      best = ratio;
      have_best = true;
      cert.witness = families.current();
    }
  }
  cert.constant = best;
  cert.metadata.families_checked = checked;
  return cert;
}

WeightVector clear_denominators(const WeightVector& eta, std::uint64_t denominator) {
  const double top = eta.weights.empty()
                         ? 0.0
                         : *std::max_element(eta.weights.begin(), eta.weights.end());
  std::vector<std::size_t> counts(eta.size(), 0);
  if (top > 0.0) {
    for (std::size_t j = 0; j < eta.size(); ++j) {
      counts[j] = static_cast<std::size_t>(
          std::llround(eta.weights[j] / top * static_cast<double>(denominator)));
    }
  }
  return WeightVector::from_counts(counts);
}

}  // namespace summability
