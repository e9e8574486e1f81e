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

#ifndef SUMMABILITY_CERTIFICATE_HPP_
#define SUMMABILITY_CERTIFICATE_HPP_

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "summability/exponents.hpp"
#include "summability/instance.hpp"

namespace summability {

// Probability vector over a finite atom set.
struct MeasureVector {
  std::vector<std::string> atoms;
  std::vector<double> mass;

  static MeasureVector uniform(std::vector<std::string> atoms);
  static MeasureVector dirac(std::vector<std::string> atoms, std::size_t index);
  // Clamps negative entries to zero and divides by the total. Throws
  // Error(kOutOfRange) when nothing positive remains.
  static MeasureVector normalized(std::vector<std::string> atoms, std::vector<double> weights);

  // Masses nonnegative, summing to 1 within 1e-12, one per atom.
  bool is_valid() const noexcept;

  friend bool operator==(const MeasureVector&, const MeasureVector&) = default;
};

enum class CertificateKind {
  kExactLP,
  kExactVertex,
  kBruteForceLowerBound,
  kPredicted,
  kDomination,
};

std::string_view to_string(CertificateKind kind);

struct CertificateMetadata {
  std::optional<Exponents> exponents;
  double q = 0.0;
  double p = 0.0;
  double alpha = 1.0;
  std::size_t budget = 0;
  double tolerance = 0.0;
  std::size_t families_checked = 0;
};

using Witness = std::variant<std::monostate, WeightVector, std::vector<MeasureVector>>;

struct Certificate {
  // +infinity marks "no finite constant".
  double constant = 0.0;
  CertificateKind kind = CertificateKind::kPredicted;
  Witness witness;
  double slack = 0.0;
  CertificateMetadata metadata;

  bool is_finite() const noexcept { return constant < std::numeric_limits<double>::infinity(); }
  const WeightVector* family() const noexcept { return std::get_if<WeightVector>(&witness); }
  const std::vector<MeasureVector>* measures() const noexcept {
    return std::get_if<std::vector<MeasureVector>>(&witness);
  }
};

}  // namespace summability

#endif  // SUMMABILITY_CERTIFICATE_HPP_
