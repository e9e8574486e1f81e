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
#include "summability/inclusion.hpp"
#include "summability/summing.hpp"

namespace summability {
namespace {

SummingInstance make(const std::vector<std::vector<double>>& s,
                     const std::vector<std::vector<double>>& r) {
  std::vector<std::string> ids;
  for (std::size_t j = 0; j < s.size(); ++j) ids.push_back("z" + std::to_string(j));
  std::vector<std::string> v;
  for (std::size_t c = 0; c < s.front().size(); ++c) v.push_back("v" + std::to_string(c));
  std::vector<std::string> w;
  for (std::size_t c = 0; c < r.front().size(); ++c) w.push_back("w" + std::to_string(c));
  return SummingInstance(ids, v, w, Table::from_rows(s), Table::from_rows(r));
}

TEST(PredictInclusion, Examples) {
  Certificate c = predict_inclusion(3.0, {1, 1, 2, 2});
  EXPECT_DOUBLE_EQ(c.constant, 9.0);
  EXPECT_EQ(c.metadata.alpha, 1.0);
  EXPECT_EQ(c.kind, CertificateKind::kPredicted);
  EXPECT_DOUBLE_EQ(predict_inclusion(1.0, {2, 4, 3, 12}).constant, 1.0);
  c = predict_inclusion(2.0, {2, 4, 3, 12});
  EXPECT_NEAR(c.constant, 2.8284271247461903, 1e-15);
  EXPECT_DOUBLE_EQ(c.metadata.alpha, 2.0);
}

TEST(PredictInclusion, Inadmissible) {
  try {
    predict_inclusion(2.0, {1, 2, 2, 4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInadmissibleExponents);
  }
}

TEST(PredictInclusion, ExponentChainsCompose) {
  for (double c : {0.3, 1.0, 2.0, 7.5}) {
    const double two_steps =
        predict_inclusion(predict_inclusion(c, {1, 1, 2, 2}).constant, {2, 2, 4, 4}).constant;
    EXPECT_NEAR(two_steps, predict_inclusion(c, {1, 1, 4, 4}).constant, 1e-12 * c * c * c * c);
  }
}

TEST(VerifyInclusion, IdenticalTablesPass) {
  const auto t = std::vector<std::vector<double>>{{1, 0}, {0, 1}, {1, 1}};
  const InclusionReport report = verify_inclusion(make(t, t), {1, 1, 2, 2}, 6);
  EXPECT_NEAR(report.premise.constant, 1.0, 1e-12);
  EXPECT_NEAR(report.predicted.constant, 1.0, 1e-12);
  EXPECT_GE(report.worst_slack, -1e-12);
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.families_checked, count_families(3, 6));
}

TEST(VerifyInclusion, PremiseNotCertified) {
  try {
    verify_inclusion(make({{1}, {1}}, {{1}, {0}}), {1, 1, 2, 2}, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPremiseNotCertified);
  }
}

TEST(VerifyInclusion, AlphaIsOneForDiagonalExponents) {
  const InclusionReport report =
      verify_inclusion(build_random_summing(4, 3, 2, 2, 2.0), {1.5, 1.5, 3, 3}, 4);
  EXPECT_EQ(report.predicted.metadata.alpha, 1.0);
  EXPECT_TRUE(report.pass);
}

TEST(VerifyInclusion, UnderstatedPremiseIsCaught) {
  const SummingInstance inst = make({{2}}, {{1}});
  const Exponents e{1, 1, 2, 2};
  Certificate premise = summing_constant_exact(inst, 1, 1);
  ASSERT_DOUBLE_EQ(premise.constant, 2.0);
  EXPECT_TRUE(check_inclusion_against(inst, e, 4, premise).pass);
  premise.constant *= 0.9;
  const InclusionReport report = check_inclusion_against(inst, e, 4, premise);
  EXPECT_LT(report.worst_slack, 0.0);
  EXPECT_FALSE(report.pass);
  EXPECT_EQ(report.worst_family, WeightVector::unit(1, 0));
}

// Independent recomputation of the worst slack by plain enumeration.
double enumerated_worst(const SummingInstance& inst, const Exponents& e, double premise,
                        std::size_t budget) {
  const AlphaParams a = compute_alpha(e);
  const double bound = std::pow(premise, a.constant_exponent);
  double worst = INFINITY;
  for (const WeightVector& eta : enumerate_families(inst.num_points(), budget)) {
    const double lhs = lhs_value(inst, e.q2, eta);
    const double rhs = rhs_value(inst, e.p2, eta);
    if (lhs == 0.0 && rhs == 0.0) continue;
    const double scaled = bound * rhs;
    worst = std::min(worst, (scaled - std::pow(lhs, 1.0 / a.alpha)) / std::max(1.0, scaled));
  }
  return worst;
}

class InclusionSeeds : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(InclusionSeeds, PredictedBoundHoldsAndMatchesEnumeration) {
  const std::uint64_t seed = GetParam();
  const SummingInstance inst = build_random_summing(seed, 1 + seed % 4, 1 + seed % 3, 3, 2.0);
  for (const Exponents& e : {Exponents{1, 1, 2, 2}, Exponents{2, 4, 3, 12}}) {
    const InclusionReport report = verify_inclusion(inst, e, 5);
    EXPECT_TRUE(report.pass) << "seed " << seed;
    EXPECT_NEAR(report.worst_relative_slack,
                enumerated_worst(inst, e, report.premise.constant, 5), 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, InclusionSeeds, ::testing::Range<std::uint64_t>(0, 30));

TEST(MultiplicativeInstance, RejectsBadGrid) {
  const SummingInstance inst = make({{1}}, {{1}});
  EXPECT_THROW(MultiplicativeInstance(inst, {}), Error);
  EXPECT_THROW(MultiplicativeInstance(inst, {1.0, 0.0}), Error);
  EXPECT_EQ(MultiplicativeInstance(inst, {1.0, 2.0}).num_atoms(), 2u);
}

TEST(MultiplicativePremise, LinearCaseMatchesLp) {
  const SummingInstance inst = build_random_summing(8, 4, 2, 3, 2.0);
  const Certificate premise = multiplicative_premise(inst, 2.0, 2.0);
  EXPECT_EQ(premise.kind, CertificateKind::kExactLP);
  EXPECT_NEAR(premise.constant, std::sqrt(summing_constant_exact(inst, 2, 2).constant), 1e-12);
}

// Grid search over scalings (a1, a2) of a two-point instance approaches the
// vertex value from below.
TEST(MultiplicativePremise, VertexValueAgainstGridSearch) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const SummingInstance inst = build_random_summing(100 + seed, 2, 1, 2, 2.0);
    const double q1 = 4.0;
    const double p1 = 2.0;
    const Certificate premise = multiplicative_premise(inst, q1, p1);
    EXPECT_EQ(premise.kind, CertificateKind::kExactVertex);
    const auto& s = inst.s_table();
    const auto& r = inst.r_table();
    double cap[2];
    for (int j = 0; j < 2; ++j) {
      cap[j] = 1.0 / std::max(std::pow(r(j, 0), p1), std::pow(r(j, 1), p1));
    }
    double best = 0.0;
    const int steps = 600;
    for (int i = 0; i <= steps; ++i) {
      for (int k = 0; k <= steps; ++k) {
        const double a1 = cap[0] * i / steps;
        const double a2 = cap[1] * k / steps;
        bool ok = true;
        for (int w = 0; w < 2; ++w) {
          ok = ok && a1 * std::pow(r(0, w), p1) + a2 * std::pow(r(1, w), p1) <= 1.0 + 1e-12;
        }
        if (!ok) continue;
        const double value = std::pow(a1, q1 / p1) * std::pow(s(0, 0), q1) +
                             std::pow(a2, q1 / p1) * std::pow(s(1, 0), q1);
        best = std::max(best, value);
      }
    }
    const double grid_constant = std::pow(best, 1.0 / q1);
    EXPECT_LE(grid_constant, premise.constant * (1 + 1e-12));
    EXPECT_GE(grid_constant, premise.constant * 0.99);
  }
}

TEST(MultiplicativePremise, VanishingRowIsNotSumming) {
  EXPECT_THROW(multiplicative_premise(make({{1}, {1}}, {{1}, {0}}), 2, 1), NotSummingError);
}

TEST(VerifyMultilinearInclusion, UnitGridAgreesWithRootForm) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SummingInstance inst = build_random_summing(seed, 3, 2, 2, 2.0);
    const Exponents e{2, 4, 3, 12};
    const InclusionReport report =
        verify_multilinear_inclusion(MultiplicativeInstance(inst, {1.0}), e, 4);
    EXPECT_TRUE(report.pass);
    EXPECT_EQ(report.predicted.metadata.alpha, 1.0);
    EXPECT_EQ(report.predicted.constant, report.premise.constant);
    EXPECT_EQ(report.families_checked, count_families(3, 4));
    double ratio = 0.0;
    for (const WeightVector& eta : enumerate_families(3, 4)) {
      const double rhs = rhs_value(inst, e.p2, eta);
      if (rhs > 0.0) {
        ratio = std::max(ratio, std::pow(lhs_value(inst, e.q2, eta), 1.0 / e.q2) /
                                    std::pow(rhs, 1.0 / e.p2));
      }
    }
    EXPECT_NEAR(report.observed_max_ratio, ratio, 1e-12 * ratio);
  }
}

TEST(VerifyMultilinearInclusion, IdenticalTablesPassWithConstantOne) {
  const auto t = std::vector<std::vector<double>>{{1, 0}, {0.5, 1}};
  const InclusionReport report =
      verify_multilinear_inclusion(MultiplicativeInstance(make(t, t), kDefaultScalarGrid),
                                   {1, 1, 2, 2}, 4);
  EXPECT_NEAR(report.premise.constant, 1.0, 1e-12);
  EXPECT_TRUE(report.pass);
}

TEST(VerifyMultilinearInclusion, ConstantIsPreservedOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const MultiplicativeInstance minst =
        build_random_multiplicative(seed, 1 + seed % 3, 2, 2, 2.0);
    const InclusionReport report = verify_multilinear_inclusion(minst, {2, 4, 3, 12}, 4);
    EXPECT_GE(report.worst_relative_slack, -1e-9) << "seed " << seed;
    EXPECT_LE(report.observed_max_ratio, report.premise.constant * (1 + 1e-9));
  }
}

TEST(VerifyMultilinearInclusion, UnderstatedPremiseIsCaught) {
  const MultiplicativeInstance minst(make({{2}}, {{1}}), {1.0});
  Certificate premise = multiplicative_premise(minst.base(), 1, 1);
  premise.constant *= 0.9;
  EXPECT_FALSE(check_multilinear_against(minst, {1, 1, 1, 1}, 3, premise).pass);
}

}  // namespace
}  // namespace summability
