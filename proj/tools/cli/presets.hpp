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

#ifndef SUMMABILITY_TOOLS_PRESETS_HPP_
#define SUMMABILITY_TOOLS_PRESETS_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace summability::cli {

std::vector<std::string> preset_names();

// Instance document of a named preset, or nullopt.
std::optional<nlohmann::json> preset_document(std::string_view name);

}  // namespace summability::cli

#endif  // SUMMABILITY_TOOLS_PRESETS_HPP_
