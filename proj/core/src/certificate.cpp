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

#include "summability/certificate.hpp"

#include <cmath>

#include "summability/error.hpp"

namespace summability {

MeasureVector MeasureVector::uniform(std::vector<std::string> atoms) {
  MeasureVector out;
  const double w = atoms.empty() ? 0.0 : 1.0 / static_cast<double>(atoms.size());
  out.mass.assign(atoms.size(), w);
  out.atoms = std::move(atoms);
  return out;
}

MeasureVector MeasureVector::dirac(std::vector<std::string> atoms, std::size_t index) {
  MeasureVector out;
  out.mass.assign(atoms.size(), 0.0);
  out.mass.at(index) = 1.0;
  out.atoms = std::move(atoms);
  return out;
}

MeasureVector MeasureVector::normalized(std::vector<std::string> atoms,
                                        std::vector<double> weights) {
  if (atoms.size() != weights.size()) {
    throw Error(ErrorCode::kMeasureShapeMismatch, "measure: atoms and weights differ in length");
  }
  double total = 0.0;
  for (double& w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) w = 0.0;
    total += w;
  }
  if (!(total > 0.0)) throw Error(ErrorCode::kOutOfRange, "measure: no positive mass");
  for (double& w : weights) w /= total;
  MeasureVector out;
  out.atoms = std::move(atoms);
  out.mass = std::move(weights);
  return out;
}

bool MeasureVector::is_valid() const noexcept {
  if (atoms.size() != mass.size() || mass.empty()) return false;
  double total = 0.0;
  for (double m : mass) {
    if (!(m >= 0.0) || !std::isfinite(m)) return false;
    total += m;
  }
  return std::abs(total - 1.0) <= 1e-12;
}

std::string_view to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::kExactLP: return "ExactLP";
    case CertificateKind::kExactVertex: return "ExactVertex";
    case CertificateKind::kBruteForceLowerBound: return "BruteForceLowerBound";
    case CertificateKind::kPredicted: return "Predicted";
    case CertificateKind::kDomination: return "Domination";
  }
  return "Unknown";
}

}  // namespace summability
