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

#ifndef SUMMABILITY_DETAIL_MULTISET_WALK_HPP_
#define SUMMABILITY_DETAIL_MULTISET_WALK_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "summability/table.hpp"

namespace summability::detail {

// Visits every multiset of rows of `contrib` with 1..budget elements, in
// lexicographic order of the sorted element sequence. `visit(counts, sums)`
// receives the multiplicity of each row and the column-wise sum of the chosen
// rows (each added once per copy). Sums are rebuilt per depth, not updated in
// place, so they carry no cancellation drift.
template <class Visitor>
void walk_multisets(const Table& contrib, std::size_t budget, Visitor&& visit) {
  const std::size_t atoms = contrib.rows();
  const std::size_t width = contrib.cols();
  if (atoms == 0 || budget == 0) return;
  std::vector<std::vector<double>> levels(budget + 1, std::vector<double>(width, 0.0));
  std::vector<std::size_t> counts(atoms, 0);

  auto recurse = [&](auto& self, std::size_t start, std::size_t depth) -> void {
    const std::vector<double>& base = levels[depth];
    std::vector<double>& next = levels[depth + 1];
    for (std::size_t a = start; a < atoms; ++a) {
      const auto row = contrib.row(a);
      for (std::size_t c = 0; c < width; ++c) next[c] = base[c] + row[c];
      ++counts[a];
      visit(std::span<const std::size_t>(counts), std::span<const double>(next));
      if (depth + 1 < budget) self(self, a, depth + 1);
      --counts[a];
    }
  };
  recurse(recurse, 0, 0);
}

}  // namespace summability::detail

#endif  // SUMMABILITY_DETAIL_MULTISET_WALK_HPP_
