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

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "summability/builders.hpp"
#include "summability/error.hpp"
#include "summability/pdt.hpp"
#include "summability/summing.hpp"

namespace summability {
namespace {

OperatorSpec identity_spec(std::size_t d) {
  OperatorSpec spec;
  spec.matrix = Table(d, d);
  for (std::size_t i = 0; i < d; ++i) spec.matrix(i, i) = 1.0;
  spec.domain_norm = NormKind::kSup;
  spec.target_norm = NormKind::kTwo;
  spec.test_grid = default_grid(d);
  return spec;
}

TensorSpec bilinear(std::size_t out_dim, std::vector<double> coefficients) {
  TensorSpec spec;
  spec.out_dim = out_dim;
  spec.dims = {2, 2};
  spec.coefficients = std::move(coefficients);
  spec.target_norm = NormKind::kOne;
  return spec;
}

TEST(Norms, ParseAndEvaluate) {
  EXPECT_EQ(parse_norm("sup"), NormKind::kSup);
  EXPECT_EQ(parse_norm("one"), NormKind::kOne);
  EXPECT_EQ(parse_norm("two"), NormKind::kTwo);
  EXPECT_THROW(parse_norm("three"), Error);
  const std::vector<double> x{3, -4};
  EXPECT_EQ(vector_norm(x, NormKind::kSup), 4.0);
  EXPECT_EQ(vector_norm(x, NormKind::kOne), 7.0);
  EXPECT_EQ(vector_norm(x, NormKind::kTwo), 5.0);
}

TEST(DefaultGrid, BasisThenSigns) {
  const Grid g = default_grid(2);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ(g[0], (std::vector<double>{1, 0}));
  EXPECT_EQ(g[1], (std::vector<double>{0, 1}));
  EXPECT_EQ(g[2], (std::vector<double>{1, 1}));
  EXPECT_EQ(g[3], (std::vector<double>{1, -1}));
  EXPECT_LE(default_grid(10).size(), 64u);
}

TEST(BuildLinftyLinear, AtomsAndTables) {
  const LinearBuild build = build_linfty_linear(identity_spec(2), 2.0);
  ASSERT_EQ(build.pdt.t(), 1u);
  EXPECT_EQ(build.pdt.atom_sets()[0], (std::vector<std::string>{"e1", "e2"}));
  EXPECT_EQ(build.pdt.num_points(), 4u);
  const PdtPoint& p = build.pdt.points()[3];
  EXPECT_DOUBLE_EQ(p.s, std::sqrt(2.0));
  EXPECT_EQ(p.r[0], (std::vector<double>{1, 1}));
  EXPECT_EQ(build.summing.num_v(), 1u);
  EXPECT_EQ(build.summing.w_ids(), build.pdt.atom_sets()[0]);
  EXPECT_EQ(build.summing.num_points(), build.pdt.num_points());
}

TEST(BuildLinftyLinear, IdentityIsSqrtTwo) {
  const LinearBuild build = build_linfty_linear(identity_spec(2), 2.0);
  EXPECT_NEAR(best_constant_duality(build.pdt).constant, std::sqrt(2.0), 1e-8);
  const Certificate lb = summing_lb_pdt(build.pdt, 2);
  EXPECT_NEAR(lb.constant, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::sqrt(summing_constant_exact(build.summing, 2, 2).constant), std::sqrt(2.0),
              1e-9);
}

TEST(BuildLinftyLinear, ZeroMatrix) {
  OperatorSpec spec = identity_spec(3);
  spec.matrix = Table(2, 3);
  const LinearBuild build = build_linfty_linear(spec, 1.0);
  for (const PdtPoint& p : build.pdt.points()) EXPECT_EQ(p.s, 0.0);
  EXPECT_EQ(best_constant_duality(build.pdt).constant, 0.0);
}

TEST(BuildLinftyLinear, RejectsRoundDomains) {
  OperatorSpec spec = identity_spec(2);
  spec.domain_norm = NormKind::kTwo;
  try {
    build_linfty_linear(spec, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedDomainNorm);
  }
}

// Doubling the atoms to +-e_i changes no constant.
TEST(BuildLinftyLinear, SignCollapseIsSound) {
  OperatorSpec spec = identity_spec(3);
  spec.matrix(0, 2) = -0.7;
  spec.matrix(1, 0) = 1.3;
  const LinearBuild build = build_linfty_linear(spec, 2.0);
  std::vector<std::string> doubled = build.pdt.atom_sets()[0];
  for (const std::string& atom : build.pdt.atom_sets()[0]) doubled.push_back("-" + atom);
  std::vector<PdtPoint> points = build.pdt.points();
  for (PdtPoint& p : points) {
    const std::vector<double> once = p.r[0];
    p.r[0].insert(p.r[0].end(), once.begin(), once.end());
  }
  const PdtInstance twin({doubled}, {2.0}, points);
  EXPECT_NEAR(best_constant_duality(twin).constant, best_constant_duality(build.pdt).constant,
              1e-9);
  EXPECT_EQ(summing_lb_pdt(twin, 4).constant, summing_lb_pdt(build.pdt, 4).constant);
}

TEST(BuildSampledDual, DeterministicAndApproximate) {
  OperatorSpec spec = identity_spec(3);
  spec.domain_norm = NormKind::kTwo;
  const PdtInstance a = build_sampled_dual(spec, 2.0, 50, 7);
  const PdtInstance b = build_sampled_dual(spec, 2.0, 50, 7);
  EXPECT_TRUE(a == b);
  EXPECT_TRUE(a.approximate());
  EXPECT_EQ(a.atom_sets()[0].size(), 50u);
  EXPECT_FALSE(build_sampled_dual(spec, 2.0, 50, 8) == a);
  const PdtInstance one = build_sampled_dual(spec, 2.0, 1, 0);
  EXPECT_EQ(one.atom_sets()[0].size(), 1u);
}

TEST(BuildSampledDual, NeverExceedsExtremePoints) {
  OperatorSpec spec = identity_spec(3);
  spec.matrix(0, 1) = 0.5;
  spec.matrix(2, 0) = -1.5;
  const LinearBuild exact = build_linfty_linear(spec, 2.0);
  const PdtInstance sampled = build_sampled_dual(spec, 2.0, 10000, 3);
  ASSERT_EQ(sampled.num_points(), exact.pdt.num_points());
  auto column_top = [](const PdtInstance& inst) {
    std::vector<double> sums(inst.atom_sets()[0].size(), 0.0);
    for (const PdtPoint& p : inst.points()) {
      for (std::size_t a = 0; a < sums.size(); ++a) sums[a] += p.r[0][a] * p.r[0][a];
    }
    return *std::max_element(sums.begin(), sums.end());
  };
  const double top = column_top(exact.pdt);
  EXPECT_LE(column_top(sampled), top * (1 + 1e-12));
  EXPECT_GE(column_top(sampled), 0.9 * top);
}

TEST(BuildSemiIntegral, FourAtomsAndScalarGrid) {
  const SemiIntegralBuild build = build_semi_integral(bilinear(1, {1, 2, 3, 4}), 1.0);
  ASSERT_EQ(build.pdt.t(), 1u);
  EXPECT_EQ(build.pdt.atom_sets()[0].size(), 4u);
  EXPECT_EQ(build.pdt.num_points(), 16u);
  EXPECT_TRUE(build.pdt.homogeneous());
  EXPECT_EQ(build.multiplicative.scalar_grid(), kDefaultScalarGrid);
  EXPECT_EQ(build.multiplicative.base().num_points(), build.pdt.num_points());
}

TEST(BuildSemiIntegral, RankOneHasConstantOne) {
  const SemiIntegralBuild build = build_semi_integral(bilinear(1, {1, 0, 0, 0}), 1.0);
  for (const PdtPoint& p : build.pdt.points()) EXPECT_DOUBLE_EQ(p.s, p.r[0][0]);
  const std::vector<MeasureVector> dirac{MeasureVector::dirac(build.pdt.atom_sets()[0], 0)};
  const SlackReport report = verify_domination(build.pdt, 1.0, dirac);
  EXPECT_TRUE(report.pass);
  EXPECT_NEAR(report.min_slack, 0.0, 1e-15);
  EXPECT_NEAR(best_constant_duality(build.pdt).constant, 1.0, 1e-8);
}

TEST(BuildSemiIntegral, DualitySandwichOnRandomTensor) {
  const SemiIntegralBuild build = build_semi_integral(random_tensor_spec(5, 2, {2, 2, 2}), 1.0);
  const double best = best_constant_duality(build.pdt).constant;
  EXPECT_LE(summing_lb_pdt(build.pdt, 3).constant, best * (1 + 1e-8));
}

TEST(BuildSemiIntegral, ShapeMismatch) {
  EXPECT_THROW(build_semi_integral(bilinear(1, {1, 2, 3}), 1.0), Error);
}

TEST(BuildSemiIntegral, AnchorOnLinearMapLeavesTableUnchanged) {
  TensorSpec spec;
  spec.out_dim = 2;
  spec.dims = {3};
  spec.coefficients = {1, -2, 0.5, 0, 1, 1};
  spec.target_norm = NormKind::kTwo;
  const SemiIntegralBuild plain = build_semi_integral(spec, 2.0);
  spec.anchor = std::vector<std::vector<double>>{{0.3, -1.0, 2.0}};
  const SemiIntegralBuild anchored = build_semi_integral(spec, 2.0);
  ASSERT_EQ(plain.pdt.num_points(), anchored.pdt.num_points());
  for (std::size_t d = 0; d < plain.pdt.num_points(); ++d) {
    EXPECT_NEAR(plain.pdt.points()[d].s, anchored.pdt.points()[d].s, 1e-12);
  }
}

TEST(BuildCohen, ExponentsAndKernels) {
  const PdtInstance inst = build_cohen(bilinear(2, {1, 0, 0, 1, 0, 1, -1, 0}), 2.0);
  ASSERT_EQ(inst.t(), 2u);
  EXPECT_EQ(inst.exponents().parts, (std::vector<double>{2.0, 2.0}));
  EXPECT_DOUBLE_EQ(inst.exponents().combined, 1.0);
  EXPECT_EQ(inst.atom_sets()[0].size(), 1u);
  EXPECT_EQ(inst.atom_sets()[1].size(), 2u);
  const PdtInstance q3 = build_cohen(bilinear(2, {1, 0, 0, 1, 0, 1, -1, 0}), 3.0);
  EXPECT_DOUBLE_EQ(1.0 / q3.exponents().parts[0] + 1.0 / q3.exponents().parts[1], 1.0);
  EXPECT_DOUBLE_EQ(q3.exponents().combined, 1.0);
  EXPECT_THROW(build_cohen(bilinear(2, {1, 0, 0, 1, 0, 1, -1, 0}), 1.0), Error);
}

TEST(BuildCohen, ZeroFunctionalRowsAreInert) {
  const Grid ystar{{0, 0}, {1, 0}, {0, 1}};
  const PdtInstance inst = build_cohen(bilinear(2, {1, 0, 0, 1, 0, 1, -1, 0}), 2.0, ystar);
  std::size_t zero_rows = 0;
  for (const PdtPoint& p : inst.points()) {
    if (p.r[1] == std::vector<double>{0, 0}) {
      ++zero_rows;
      EXPECT_EQ(p.s, 0.0);
    }
  }
  EXPECT_EQ(zero_rows, inst.num_points() / 3);
}

TEST(BuildCohen, SeededVariantRoundTrip) {
  const PdtInstance inst = build_cohen(random_tensor_spec(11, 2, {2, 2}), 2.0);
  const double c = 1.05 * summing_lb_pdt(inst, 4).constant;
  const SynthesisResult out = synthesize_measures(inst, c);
  ASSERT_EQ(out.status, SynthesisStatus::kFeasible);
  EXPECT_GE(roundtrip_check(inst, c, out.measures, 4).min_relative_slack, -1e-8);
}

TEST(BuildWeightedDominated, UnitWeightsMatchUnweighted) {
  const TensorSpec spec = bilinear(1, {1, -1, 2, 0.5});
  const std::vector<double> qs{2.0, 2.0};
  const std::vector<double> unit{1.0};
  const PdtInstance inst = build_weighted_dominated(spec, qs, unit);
  const std::vector<Grid> grids = resolved_grids(spec);
  ASSERT_EQ(inst.num_points(), grids[0].size() * grids[1].size());
  std::size_t d = 0;
  for (const auto& x : grids[0]) {
    for (const auto& y : grids[1]) {
      const std::vector<std::vector<double>> factors{x, y};
      EXPECT_DOUBLE_EQ(inst.points()[d].s, vector_norm(apply_tensor(spec, factors), NormKind::kOne));
      EXPECT_DOUBLE_EQ(inst.points()[d].r[0][0], std::abs(x[0]));
      EXPECT_DOUBLE_EQ(inst.points()[d].r[1][1], std::abs(y[1]));
      ++d;
    }
  }
}

TEST(BuildWeightedDominated, ZeroWeightZeroesRow) {
  const std::vector<double> qs{2.0, 2.0};
  const std::vector<double> weights{0.0, 1.0, 2.0};
  const PdtInstance inst = build_weighted_dominated(bilinear(1, {1, -1, 2, 0.5}), qs, weights);
  std::size_t zeroed = 0;
  for (const PdtPoint& p : inst.points()) {
    const bool flat0 = std::all_of(p.r[0].begin(), p.r[0].end(), [](double v) { return v == 0; });
    const bool flat1 = std::all_of(p.r[1].begin(), p.r[1].end(), [](double v) { return v == 0; });
    if (flat0 || flat1) {
      EXPECT_EQ(p.s, 0.0);
      ++zeroed;
    }
  }
  EXPECT_GT(zeroed, 0u);
}

TEST(BuildWeightedDominated, SynthesizedCertificateVerifies) {
  const std::vector<double> qs{2.0, 2.0};
  const std::vector<double> weights{0.5, 1.0};
  const PdtInstance inst =
      build_weighted_dominated(random_tensor_spec(3, 1, {2, 2}), qs, weights);
  const Certificate best = best_constant_duality(inst, 1e-7);
  ASSERT_NE(best.measures(), nullptr);
  EXPECT_TRUE(verify_domination(inst, best.constant * (1 + 1e-7), *best.measures()).pass);
  EXPECT_LE(summing_lb_pdt(inst, 3).constant, best.constant * (1 + 1e-7));
}

TEST(BuildWeightedDominated, UserTable) {
  const std::vector<double> qs{1.0, 1.0};
  const std::vector<double> weights{1.0};
  const TensorSpec spec = bilinear(1, {1, 0, 0, 1});
  const std::size_t n = resolved_grids(spec)[0].size() * resolved_grids(spec)[1].size();
  std::vector<double> table(n, 2.0);
  const PdtInstance inst = build_weighted_dominated(spec, qs, weights, table);
  for (const PdtPoint& p : inst.points()) EXPECT_EQ(p.s, 2.0);
  table.pop_back();
  EXPECT_THROW(build_weighted_dominated(spec, qs, weights, table), Error);
}

TEST(BuildStronglySumming, ApproximateAndDeterministic) {
  const TensorSpec spec = bilinear(1, {1, 0, 0, 1});
  const PdtInstance a = build_strongly_summing(spec, 2.0, 20, 4);
  EXPECT_TRUE(a.approximate());
  EXPECT_EQ(a.atom_sets()[0].size(), 20u);
  EXPECT_TRUE(a == build_strongly_summing(spec, 2.0, 20, 4));
  // Unit-norm forms never exceed one on sign points.
  for (const PdtPoint& p : a.points()) {
    for (double r : p.r[0]) EXPECT_LE(r, 1.0 + 1e-12);
  }
}

TEST(BuildRandomSumming, SeededAndScaled) {
  EXPECT_TRUE(build_random_summing(3, 4, 2, 3, 2.0) == build_random_summing(3, 4, 2, 3, 2.0));
  const SummingInstance zero = build_random_summing(3, 4, 2, 3, 0.0);
  for (double v : zero.s_table().values()) EXPECT_EQ(v, 0.0);
  for (double v : zero.r_table().values()) EXPECT_EQ(v, 0.0);
  const SummingInstance inst = build_random_summing(9, 4, 2, 3, 2.0);
  for (double v : inst.s_table().values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 2.0);
  }
}

TEST(BuildRandomPdt, Seeded) {
  EXPECT_TRUE(build_random_pdt(1, 5, 7, 2.0) == build_random_pdt(1, 5, 7, 2.0));
  EXPECT_FALSE(build_random_pdt(1, 5, 7, 2.0) == build_random_pdt(2, 5, 7, 2.0));
}

}  // namespace
}  // namespace summability
