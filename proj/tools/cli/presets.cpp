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

#include "presets.hpp"

namespace summability::cli {

using json = nlohmann::json;

std::vector<std::string> preset_names() {
  return {"identity", "two-point-pdt", "cohen-2x2", "pi2-identity-d2"};
}

std::optional<json> preset_document(std::string_view name) {
  if (name == "identity") {
    // Same table on both sides, so every family ratio is 1.
    const json table = json::array({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
    return json{{"kind", "summing"}, {"points", {"z1", "z2", "z3"}},
                {"v", {"c1", "c2"}},  {"w", {"c1", "c2"}},
                {"s", table},         {"r", table}};
  }
  if (name == "two-point-pdt") {
    return json{{"kind", "pdt"},
                {"t", 1},
                {"atom_sets", json::array({json::array({"phi1", "phi2"})})},
                {"exponents", {1.0}},
                {"data_points",
                 {{{"label", "d1"}, {"s", 1.0}, {"r_tables", json::array({json::array({1.0, 0.0})})}},
                  {{"label", "d2"}, {"s", 1.0}, {"r_tables", json::array({json::array({0.0, 1.0})})}}}}};
  }
  if (name == "cohen-2x2") {
    // T(x, y) = (x1 y1 + x2 y2, x1 y2 - x2 y1) into a two-dimensional one-norm space.
    return json{{"kind", "tensor"},
                {"builder", "cohen"},
                {"out_dim", 2},
                {"dims", {2, 2}},
                {"coefficients", {1.0, 0.0, 0.0, 1.0, 0.0, 1.0, -1.0, 0.0}},
                {"target_norm", "one"},
                {"q", 2.0}};
  }
  if (name == "pi2-identity-d2") {
    return json{{"kind", "operator"},
                {"matrix", {{1.0, 0.0}, {0.0, 1.0}}},
                {"domain_norm", "sup"},
                {"target_norm", "two"},
                {"p", 2.0}};
  }
  return std::nullopt;
}

}  // namespace summability::cli
