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


// Links against the installed package and checks one exact constant.

#include <cmath>
#include <cstdio>

#include "summability/summing.hpp"

int main() {
  using namespace summability;
  const SummingInstance inst({"z"}, {"v"}, {"w"}, Table::from_rows({{2.0}}),
                             Table::from_rows({{1.0}}));
  const double c = summing_constant_exact(inst, 1.0, 1.0).constant;
  std::printf("constant %.17g\n", c);
  return std::abs(c - 2.0) < 1e-12 ? 0 : 1;
}
