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

#include "summability/exponents.hpp"

#include <cmath>
#include <string>

#include "summability/error.hpp"

namespace summability {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInadmissibleExponents: return "InadmissibleExponents";
    case ErrorCode::kEmptyParts: return "EmptyParts";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroDenominator: return "ZeroDenominator";
    case ErrorCode::kDegenerateFamily: return "DegenerateFamily";
    case ErrorCode::kNotSumming: return "NotSumming";
    case ErrorCode::kEmptyInstance: return "EmptyInstance";
    case ErrorCode::kPremiseNotCertified: return "PremiseNotCertified";
    case ErrorCode::kMeasureShapeMismatch: return "MeasureShapeMismatch";
    case ErrorCode::kNotDominated: return "NotDominated";
    case ErrorCode::kUnsupportedDomainNorm: return "UnsupportedDomainNorm";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kBracketInvalid: return "BracketInvalid";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

bool check_admissible(const Exponents& e) {
  if (!positive_finite(e.p1) || !positive_finite(e.q1) || !positive_finite(e.p2) ||
      !positive_finite(e.q2)) {
    return false;
  }
  return 1.0 <= e.p1 && e.p1 <= e.q1 && e.p2 <= e.q2 && e.p1 <= e.p2 && e.q1 <= e.q2 &&
         (1.0 / e.p1 - 1.0 / e.q1) <= (1.0 / e.p2 - 1.0 / e.q2);
}

AlphaParams compute_alpha(const Exponents& e) {
  if (!check_admissible(e)) {
    throw Error(ErrorCode::kInadmissibleExponents,
                "exponents (p1=" + std::to_string(e.p1) + ", q1=" + std::to_string(e.q1) +
                    ", p2=" + std::to_string(e.p2) + ", q2=" + std::to_string(e.q2) +
                    ") are not admissible");
  }
  // The same expression covers p1 == p2: it collapses to q2/q1, which is what
  // the l_q1 -> l_q2 norm comparison needs when q1 < q2.
  AlphaParams out;
  out.alpha = (e.q2 * e.p1) / (e.q1 * e.p2);
  out.constant_exponent = e.p2 / e.p1;
  if (e.p1 == e.q1 && e.p2 == e.q2) out.alpha = 1.0;
  return out;
}

HarmonicExponents harmonic_combine(std::span<const double> parts) {
  if (parts.empty()) throw Error(ErrorCode::kEmptyParts, "harmonic_combine: no parts");
  double reciprocal = 0.0;
  for (double part : parts) {
    if (!positive_finite(part)) {
      throw Error(ErrorCode::kOutOfRange,
                  "harmonic_combine: part " + std::to_string(part) + " is not in (0, inf)");
    }
    reciprocal += 1.0 / part;
  }
  HarmonicExponents out;
  out.parts.assign(parts.begin(), parts.end());
  out.combined = parts.size() == 1 ? parts.front() : 1.0 / reciprocal;
  return out;
}

double am_gm_gap(std::span<const double> parts, std::span<const double> values) {
  if (parts.size() != values.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "am_gm_gap: " + std::to_string(parts.size()) + " exponents but " +
                    std::to_string(values.size()) + " values");
  }
  const double p = harmonic_combine(parts).combined;
  double product = 1.0;
  double rhs = 0.0;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (!(values[j] >= 0.0)) {
      throw Error(ErrorCode::kOutOfRange, "am_gm_gap: negative value");
    }
    product *= std::pow(values[j], p);
    rhs += std::pow(values[j], parts[j]) / parts[j];
  }
  return rhs - product / p;
}

double conjugate_exponent(double q) {
  if (!(q > 1.0) || !std::isfinite(q)) {
    throw Error(ErrorCode::kOutOfRange,
                "conjugate_exponent: q = " + std::to_string(q) + " must exceed 1");
  }
  return q / (q - 1.0);
}

}  // namespace summability
