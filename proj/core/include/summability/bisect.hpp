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

#ifndef SUMMABILITY_BISECT_HPP_
#define SUMMABILITY_BISECT_HPP_

#include <functional>

namespace summability {

inline constexpr int kMaxBisectionSteps = 60;

// Smallest feasible point of a monotone predicate, to within
// tol * max(1, c*). Requires feasible(hi) and !feasible(lo); otherwise throws
// Error(kBracketInvalid). The returned point is always one at which
// `feasible` returned true.
double bisect(const std::function<bool(double)>& feasible, double lo, double hi, double tol);

}  // namespace summability

#endif  // SUMMABILITY_BISECT_HPP_
