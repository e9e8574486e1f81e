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

#ifndef SUMMABILITY_TOOLS_INSTANCE_IO_HPP_
#define SUMMABILITY_TOOLS_INSTANCE_IO_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "summability/certificate.hpp"
#include "summability/instance.hpp"
#include "summability/pdt.hpp"

namespace summability::cli {

using json = nlohmann::json;

// Malformed or invalid input. `pointer` is a JSON pointer into the document
// when the problem is tied to one value.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& message, std::string pointer = "")
      : std::runtime_error(message), pointer_(std::move(pointer)) {}
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

struct LoadedInstance {
  std::string kind;
  // Canonical form; emitting and re-parsing it reproduces the same values.
  json document;
  std::optional<SummingInstance> summing;
  std::optional<PdtInstance> pdt;
};

// `default_seed` is used by sampled builders when the document has no "seed".
LoadedInstance instance_from_json(const json& doc, std::uint64_t default_seed = 0);

// Parses text and converts it; messages carry "origin:line: ".
LoadedInstance load_instance_text(std::string_view text, const std::string& origin,
                                  std::uint64_t default_seed = 0);
LoadedInstance load_instance_file(const std::string& path, std::uint64_t default_seed = 0);

json summing_to_json(const SummingInstance& inst);
json pdt_to_json(const PdtInstance& inst);

struct MeasureFile {
  std::optional<double> constant;
  std::vector<MeasureVector> measures;
};

MeasureFile measures_from_json(const json& doc);
MeasureFile load_measures_file(const std::string& path);
json measures_to_json(std::optional<double> constant, const std::vector<MeasureVector>& measures);

// 1-based line where the value at `pointer` starts, or 0 if it is not found.
std::size_t locate_line(std::string_view text, std::string_view pointer);

std::string read_file(const std::string& path);

}  // namespace summability::cli

#endif  // SUMMABILITY_TOOLS_INSTANCE_IO_HPP_
