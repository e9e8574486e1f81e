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

#include "report.hpp"

#include <cmath>

#include "instance_io.hpp"

namespace summability::cli {

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json to_json(const Exponents& e) {
  return json{{"p1", e.p1}, {"q1", e.q1}, {"p2", e.p2}, {"q2", e.q2}};
}

json to_json(const WeightVector& family) {
  return json{{"weights", family.weights}, {"integral", family.integral}};
}

json to_json(const Certificate& cert) {
  json out{{"constant", number_or_null(cert.constant)},
           {"finite", cert.is_finite()},
           {"kind", std::string(to_string(cert.kind))},
           {"slack", number_or_null(cert.slack)}};
  if (const WeightVector* family = cert.family()) out["witness"] = {{"family", to_json(*family)}};
  if (const auto* measures = cert.measures()) {
    out["witness"] = {{"measures", measures_to_json(std::nullopt, *measures)["measures"]}};
  }
  json meta{{"q", cert.metadata.q},
            {"p", cert.metadata.p},
            {"alpha", cert.metadata.alpha},
            {"budget", cert.metadata.budget},
            {"tolerance", cert.metadata.tolerance},
            {"families_checked", cert.metadata.families_checked}};
  if (cert.metadata.exponents) meta["exponents"] = to_json(*cert.metadata.exponents);
  out["metadata"] = std::move(meta);
  return out;
}

json to_json(const InclusionReport& report) {
  return json{{"exponents", to_json(report.exponents)},
              {"premise", to_json(report.premise)},
              {"predicted", to_json(report.predicted)},
              {"worst_slack", report.worst_slack},
              {"worst_relative_slack", report.worst_relative_slack},
              {"worst_family", to_json(report.worst_family)},
              {"families_checked", report.families_checked},
              {"observed_max_ratio", report.observed_max_ratio},
              {"pass", report.pass}};
}

json to_json(const SlackReport& report) {
  json points = json::array();
  for (const PointSlack& p : report.per_point) {
    points.push_back(
        json{{"label", p.label}, {"tau", p.tau}, {"bound", p.bound}, {"slack", p.slack}});
  }
  return json{{"per_point", std::move(points)},
              {"min_slack", report.min_slack},
              {"argmin_point", report.argmin_point},
              {"pass", report.pass}};
}

json to_json(const SynthesisResult& result) {
  json out{{"status", std::string(to_string(result.status))},
           {"measures", measures_to_json(std::nullopt, result.measures)["measures"]},
           {"residual", number_or_null(result.residual)},
           {"iterations", result.iterations},
           {"slack_report", to_json(result.report)}};
  if (result.status != SynthesisStatus::kFeasible) {
    out["witness"] = {{"point_weights", result.witness.point_weights},
                      {"lower_bound", number_or_null(result.witness.lower_bound)},
                      {"certifies_infeasible", result.witness.lower_bound > 0.0}};
  }
  return out;
}

json to_json(const AmProductReport& report) {
  return json{{"gap", report.gap}, {"min_slack", number_or_null(report.min_slack)}};
}

json to_json(const RoundtripReport& report) {
  return json{{"min_slack", report.min_slack},
              {"min_relative_slack", report.min_relative_slack},
              {"worst_family", to_json(report.worst_family)},
              {"families_checked", report.families_checked},
              {"pass", report.pass}};
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace summability::cli
