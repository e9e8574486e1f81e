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

#ifndef SUMMABILITY_TOOLS_REPORT_HPP_
#define SUMMABILITY_TOOLS_REPORT_HPP_

#include <cstdint>
#include <string_view>

#include <nlohmann/json.hpp>

#include "summability/certificate.hpp"
#include "summability/exponents.hpp"
#include "summability/inclusion.hpp"
#include "summability/pdt.hpp"

namespace summability::cli {

using json = nlohmann::json;

// Infinite or NaN values become null.
json number_or_null(double x);

json to_json(const Exponents& e);
json to_json(const WeightVector& family);
json to_json(const Certificate& cert);
json to_json(const InclusionReport& report);
json to_json(const SlackReport& report);
json to_json(const SynthesisResult& result);
json to_json(const AmProductReport& report);
json to_json(const RoundtripReport& report);

std::uint64_t fnv1a(std::string_view bytes);

}  // namespace summability::cli

#endif  // SUMMABILITY_TOOLS_REPORT_HPP_
