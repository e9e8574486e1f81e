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

#ifndef SUMMABILITY_BUILDERS_HPP_
#define SUMMABILITY_BUILDERS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "summability/inclusion.hpp"
#include "summability/instance.hpp"
#include "summability/pdt.hpp"
#include "summability/table.hpp"

namespace summability {

enum class NormKind { kSup, kOne, kTwo };

std::string_view to_string(NormKind norm);
// Accepts "sup", "one", "two". Throws Error(kInvalidArgument).
NormKind parse_norm(std::string_view name);
double vector_norm(std::span<const double> x, NormKind norm);

using Grid = std::vector<std::vector<double>>;

// Basis vectors, then sign vectors with a leading +1 (their negatives give the
// same absolute values), at most 64 points.
Grid default_grid(std::size_t dim);

struct OperatorSpec {
  // k x d; maps the d-space into the k-space.
  Table matrix;
  NormKind domain_norm = NormKind::kSup;
  NormKind target_norm = NormKind::kTwo;
  Grid test_grid;
};

struct LinearBuild {
  PdtInstance pdt;
  SummingInstance summing;
};

// Atoms are the coordinate functionals, r(e_i, x) = |x_i|, s(x) = |Ax|.
// Throws Error(kUnsupportedDomainNorm) unless the domain carries the sup-norm.
LinearBuild build_linfty_linear(const OperatorSpec& spec, double p);

// Atoms sampled uniformly on the unit sphere of the dual norm.
PdtInstance build_sampled_dual(const OperatorSpec& spec, double p, std::size_t samples,
                               std::uint64_t seed);

struct TensorSpec {
  std::size_t out_dim = 1;
  std::vector<std::size_t> dims;
  // Row-major over (output, i_1, ..., i_n).
  std::vector<double> coefficients;
  NormKind target_norm = NormKind::kTwo;
  // Empty entries fall back to default_grid.
  std::vector<Grid> test_grids;
  std::optional<std::vector<std::vector<double>>> anchor;

  std::size_t order() const noexcept { return dims.size(); }
};

// Throws Error(kShapeMismatch) on inconsistent dims, coefficients, grids or anchor.
void validate(const TensorSpec& spec);

// T(x^1, ..., x^n) as an out_dim vector.
std::vector<double> apply_tensor(const TensorSpec& spec,
                                 std::span<const std::vector<double>> factors);

// Grids after defaulting, one per factor.
std::vector<Grid> resolved_grids(const TensorSpec& spec);

struct SemiIntegralBuild {
  PdtInstance pdt;
  MultiplicativeInstance multiplicative;
};

inline const std::vector<double> kDefaultScalarGrid{0.25, 0.5, 1.0, 2.0, 4.0};

SemiIntegralBuild build_semi_integral(const TensorSpec& spec, double p,
                                      std::vector<double> scalar_grid = kDefaultScalarGrid);

// Two kernels: the product of factor sup-norms on a single atom, and the
// coordinates of y* on the basis atoms. s = |y*(T(x))|, exponents (q, q*).
// An empty `ystar_grid` falls back to default_grid(out_dim).
PdtInstance build_cohen(const TensorSpec& spec, double q, Grid ystar_grid = {});

// One kernel per factor with R_k = |b_k| |x^k_i|; s = |b_1 ... b_n| A(x).
// A defaults to |T(a + x) - T(a)| and may instead be supplied per grid point.
PdtInstance build_weighted_dominated(const TensorSpec& spec, std::span<const double> qs,
                                     std::span<const double> weight_grid,
                                     std::optional<std::vector<double>> a_values = std::nullopt);

// Atoms are random multilinear forms of unit norm (maximized over sign
// vectors); flagged approximate.
PdtInstance build_strongly_summing(const TensorSpec& spec, double p, std::size_t samples,
                                   std::uint64_t seed);

// Entries uniform in [0, scale].
SummingInstance build_random_summing(std::uint64_t seed, std::size_t n, std::size_t v,
                                     std::size_t w, double scale);

MultiplicativeInstance build_random_multiplicative(
    std::uint64_t seed, std::size_t n, std::size_t v, std::size_t w, double scale,
    std::vector<double> scalar_grid = kDefaultScalarGrid);

// Single kernel with entries uniform in [0, scale]; s uniform in [0, scale].
PdtInstance build_random_pdt(std::uint64_t seed, std::size_t atoms, std::size_t points,
                             double p, double scale = 1.0);

// Coefficients uniform in [-1, 1].
TensorSpec random_tensor_spec(std::uint64_t seed, std::size_t out_dim,
                              std::vector<std::size_t> dims,
                              NormKind target_norm = NormKind::kOne);

// Uniform in [0, 1) from the top 53 bits; identical on every platform.
double uniform01(std::mt19937_64& rng);

}  // namespace summability

#endif  // SUMMABILITY_BUILDERS_HPP_
