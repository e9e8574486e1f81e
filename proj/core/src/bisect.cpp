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

#include "summability/bisect.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "summability/error.hpp"

namespace summability {

double bisect(const std::function<bool(double)>& feasible, double lo, double hi, double tol) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi) || !(tol > 0.0)) {
    throw Error(ErrorCode::kBracketInvalid, "bisect: need finite lo < hi and tol > 0");
  }
  if (!feasible(hi)) {
    throw Error(ErrorCode::kBracketInvalid, "bisect: upper end " + std::to_string(hi) +
                                                " is not feasible");
  }
  if (feasible(lo)) {
    throw Error(ErrorCode::kBracketInvalid, "bisect: lower end " + std::to_string(lo) +
                                                " is already feasible");
  }
  for (int step = 0; step < kMaxBisectionSteps; ++step) {
    if (hi - lo <= tol * std::max(1.0, lo)) break;
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace summability
