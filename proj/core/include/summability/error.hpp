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

#ifndef SUMMABILITY_ERROR_HPP_
#define SUMMABILITY_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace summability {

enum class ErrorCode {
  kInadmissibleExponents,
  kEmptyParts,
  kLengthMismatch,
  kOutOfRange,
  kDimensionMismatch,
  kZeroDenominator,
  kDegenerateFamily,
  kNotSumming,
  kEmptyInstance,
  kPremiseNotCertified,
  kMeasureShapeMismatch,
  kNotDominated,
  kUnsupportedDomainNorm,
  kShapeMismatch,
  kBracketInvalid,
  kNumericalFailure,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this type; `code()` lets callers
// branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace summability

#endif  // SUMMABILITY_ERROR_HPP_
