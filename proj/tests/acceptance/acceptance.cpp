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


// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "summability/builders.hpp"
#include "summability/exponents.hpp"
#include "summability/inclusion.hpp"
#include "summability/lp.hpp"
#include "summability/minimax.hpp"
#include "summability/pdt.hpp"
#include "summability/summing.hpp"

namespace {

using namespace summability;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

// Random instances with n <= 4 points, |V|, |W| <= 3, entries in [0, 2].
Outcome inclusion_principle() {
  const auto start = std::chrono::steady_clock::now();
  std::size_t violations = 0;
  std::size_t families = 0;
  std::size_t reports_failed = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const SummingInstance inst =
        build_random_summing(seed, 1 + seed % 4, 1 + (seed / 4) % 3, 1 + (seed / 12) % 3, 2.0);
    for (const Exponents& e : {Exponents{1, 1, 2, 2}, Exponents{2, 4, 3, 12}}) {
      const double c = summing_constant_exact(inst, e.q1, e.p1).constant;
      const double alpha = e.q2 * e.p1 / (e.q1 * e.p2);
      const double bound = std::pow(c, e.p2 / e.p1);
      FamilyEnumerator it(inst.num_points(), 6);
      while (it.next()) {
        const WeightVector eta = it.current();
        const double lhs = std::pow(lhs_value(inst, e.q2, eta), 1.0 / alpha);
        const double rhs = rhs_value(inst, e.p2, eta);
        ++families;
        const double excess = lhs - (1.0 + 1e-9) * bound * rhs;
        worst = std::max(worst, excess);
        if (excess > 0.0) ++violations;
      }
      if (!verify_inclusion(inst, e, 6).pass) ++reports_failed;
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream os;
  os << families << " families, " << violations << " violations, " << reports_failed
     << " failed reports, " << fmt("%.2f s", seconds);
  return {violations == 0 && reports_failed == 0 && seconds <= 60.0, os.str()};
}

Outcome multilinear_inclusion() {
  const Exponents e{2, 4, 3, 12};
  std::size_t failures = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const MultiplicativeInstance minst = build_random_multiplicative(
        seed, 1 + seed % 4, 1 + (seed / 4) % 3, 1 + (seed / 12) % 3, 2.0, kDefaultScalarGrid);
    const InclusionReport r = verify_multilinear_inclusion(minst, e, 5);
    worst = std::min(worst, r.worst_relative_slack);
    if (!r.pass || r.predicted.constant != r.premise.constant ||
        r.worst_relative_slack < -1e-9) {
      ++failures;
    }
  }
  return {failures == 0, fmt("%.0f failures, worst relative slack %.3g", double(failures), worst)};
}

Outcome pi2_bracket() {
  double worst = 0.0;
  for (std::size_t d = 2; d <= 4; ++d) {
    OperatorSpec spec;
    spec.matrix = Table(d, d);
    for (std::size_t i = 0; i < d; ++i) spec.matrix(i, i) = 1.0;
    spec.test_grid = default_grid(d);
    const PdtInstance inst = build_linfty_linear(spec, 2.0).pdt;
    const double target = std::sqrt(static_cast<double>(d));
    const double lower = summing_lb_pdt(inst, 6).constant;
    const double upper = best_constant_duality(inst, 1e-9).constant;
    worst = std::max({worst, std::abs(lower - target) / target, std::abs(upper - target) / target});
    if (lower > upper * (1.0 + 1e-9)) worst = std::max(worst, 1.0);
  }
  return {worst <= 1e-6, fmt("worst relative distance to sqrt(d) %.3g", worst)};
}

Outcome pdt_strong_duality() {
  double worst_gap = 0.0;
  double worst_slack = 0.0;
  std::size_t failures = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t atoms = 1 + seed % 8;
    const std::size_t points = 2 + (seed * 7) % 31;
    const double p = 1.0 + static_cast<double>(seed % 2);
    const PdtInstance inst = build_random_pdt(seed, atoms, points, p);
    const double best = best_constant_duality(inst, 1e-9).constant;
    // The LP supremum is attained at a rational family; clearing denominators
    // realizes it as an integer family of large total multiplicity.
    const Certificate sup = summing_sup_pdt(inst);
    const WeightVector family = clear_denominators(*sup.family(), 1000000000);
    const double realized = evaluate_pdt_family(inst, family).ratio;
    worst_gap = std::max(worst_gap, std::abs(realized - best) / best);
    const SynthesisResult syn = synthesize_measures(inst, (1.0 + 1e-6) * best);
    double slack = -1.0;
    if (syn.status == SynthesisStatus::kFeasible) {
      slack = verify_domination(inst, (1.0 + 1e-6) * best, syn.measures).min_slack;
    }
    worst_slack = std::min(worst_slack, slack);
    if (slack < -1e-8) ++failures;
  }
  return {worst_gap <= 1e-6 && failures == 0,
          fmt("worst |lb - C*|/C* %.3g, worst min_slack %.3g", worst_gap, worst_slack)};
}

Outcome cohen_roundtrip() {
  std::vector<TensorSpec> specs;
  TensorSpec base;
  base.out_dim = 2;
  base.dims = {2, 2};
  base.coefficients = {1, 0, 0, 1, 0, 1, -1, 0};
  base.target_norm = NormKind::kOne;
  specs.push_back(base);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    specs.push_back(random_tensor_spec(seed, 2, {2, 2}, NormKind::kOne));
  }
  std::size_t failures = 0;
  double worst_roundtrip = 0.0;
  double worst_gap = 0.0;
  for (const TensorSpec& spec : specs) {
    const PdtInstance inst = build_cohen(spec, 2.0);
    const double c = 1.05 * summing_lb_pdt(inst, 4).constant;
    const SynthesisResult syn = synthesize_measures(inst, c);
    if (syn.status != SynthesisStatus::kFeasible) {
      ++failures;
      continue;
    }
    const bool dominated = verify_domination(inst, c, syn.measures).pass;
    const double roundtrip = roundtrip_check(inst, c, syn.measures, 4).min_slack;
    const double gap = am_to_product_check(inst, c, syn.measures).gap;
    worst_roundtrip = std::min(worst_roundtrip, roundtrip);
    worst_gap = std::max(worst_gap, gap);
    if (!dominated || roundtrip < -1e-8 || gap > 1e-10) ++failures;
  }
  return {failures == 0, fmt("%.0f failures of 21, worst roundtrip %.3g, worst am gap %.3g",
                             double(failures), worst_roundtrip, worst_gap)};
}

Outcome weighted_am_gm() {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> exponent(1.0, 8.0);
  std::uniform_real_distribution<double> value(0.0, 10.0);
  std::size_t negative = 0;
  std::size_t unequal = 0;
  double worst = 0.0;
  for (std::size_t sample = 0; sample < 100000; ++sample) {
    const std::size_t t = 1 + sample % 3;
    std::vector<double> parts(t);
    std::vector<double> values(t);
    for (double& p : parts) p = exponent(rng);
    // Every fourth sample puts all q_j^{p_j} on a common level.
    const bool balanced = sample % 4 == 0;
    const double level = std::pow(value(rng), parts[0]);
    for (std::size_t j = 0; j < t; ++j) {
      values[j] = balanced ? std::pow(level, 1.0 / parts[j]) : value(rng);
    }
    double rhs = 0.0;
    for (std::size_t j = 0; j < t; ++j) rhs += std::pow(values[j], parts[j]) / parts[j];
    const double scale = std::max(1.0, rhs);
    const double gap = am_gm_gap(parts, values);
    worst = std::min(worst, gap / scale);
    if (gap < -1e-12 * scale) ++negative;
    if (balanced || t == 1) {
      if (std::abs(gap) > 1e-12 * scale) ++unequal;
    }
  }
  return {negative == 0 && unequal == 0,
          fmt("%.0f negative, %.0f balanced with nonzero gap, worst scaled gap %.3g",
              double(negative), double(unequal), worst)};
}

// Game value by LP: shift payoffs positive, then 1 / max{1.y : A y <= 1}.
double game_value_lp(const Table& payoff) {
  double lo = 0.0;
  for (double v : payoff.values()) lo = std::min(lo, v);
  const double shift = 1.0 - lo;
  Table shifted = payoff;
  for (std::size_t i = 0; i < shifted.rows(); ++i) {
    for (std::size_t j = 0; j < shifted.cols(); ++j) shifted(i, j) += shift;
  }
  const LpResult r = solve_lp(LpProblem{std::vector<double>(payoff.cols(), 1.0), shifted,
                                        std::vector<double>(payoff.rows(), 1.0)});
  return 1.0 / r.value - shift;
}

Outcome solver_cross_validation() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_game = 0.0;
  for (std::uint64_t g = 0; g < 50; ++g) {
    const std::size_t rows = 1 + g % 8;
    const std::size_t cols = 1 + (g * 5 + 3) % 8;
    Table payoff(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) payoff(i, j) = 2.0 * u(rng) - 1.0;
    }
    const MatrixPayoff oracle(payoff);
    const MinimaxResult mwu = mwu_minimax({&oracle, 200000, 1e-5});
    worst_game = std::max(worst_game, std::abs(mwu.value - game_value_lp(payoff)));
  }

  double worst_lp = 0.0;
  std::size_t not_optimal = 0;
  for (std::uint64_t k = 0; k < 50; ++k) {
    const std::size_t m = 2 + k % 7;
    const std::size_t n = 2 + (k * 3) % 9;
    LpProblem primal{std::vector<double>(n), Table(m, n), std::vector<double>(m)};
    for (double& c : primal.objective) c = 2.0 * u(rng) - 0.5;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        primal.constraint_matrix(i, j) = u(rng) < 0.2 ? 0.0 : u(rng);
      }
      primal.bounds[i] = 0.5 + u(rng);
    }
    for (std::size_t j = 0; j < n; ++j) primal.constraint_matrix(j % m, j) += 0.1;
    // min b.y s.t. A^T y >= c, y >= 0, written as max -b.y s.t. -A^T y <= -c.
    LpProblem dual{std::vector<double>(m), Table(n, m), std::vector<double>(n)};
    for (std::size_t i = 0; i < m; ++i) dual.objective[i] = -primal.bounds[i];
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) dual.constraint_matrix(j, i) = -primal.constraint_matrix(i, j);
      dual.bounds[j] = -primal.objective[j];
    }
    const LpResult a = solve_lp(primal);
    const LpResult b = solve_lp(dual);
    if (a.status != LpStatus::kOptimal || b.status != LpStatus::kOptimal) {
      ++not_optimal;
      continue;
    }
    worst_lp = std::max(worst_lp, std::abs(a.value + b.value));
  }
  return {worst_game <= 1e-4 && worst_lp <= 1e-8 && not_optimal == 0,
          fmt("worst game error %.3g, worst primal-dual gap %.3g, %.0f non-optimal", worst_game,
              worst_lp, double(not_optimal))};
}

Outcome non_vacuity() {
  const SummingInstance inst({"z"}, {"v"}, {"w"}, Table::from_rows({{2.0}}),
                             Table::from_rows({{1.0}}));
  Certificate premise = summing_constant_exact(inst, 1, 1);
  premise.constant *= 0.9;
  const InclusionReport report = check_inclusion_against(inst, {1, 1, 2, 2}, 4, premise);

  TensorSpec spec;
  spec.out_dim = 2;
  spec.dims = {2, 2};
  spec.coefficients = {1, 0, 0, 1, 0, 1, -1, 0};
  spec.target_norm = NormKind::kOne;
  const PdtInstance cohen = build_cohen(spec, 2.0);
  const double star = best_constant_duality(cohen, 1e-9).constant;
  const SynthesisResult syn = synthesize_measures(cohen, 0.9 * star);
  const bool witnessed = syn.status == SynthesisStatus::kInfeasible &&
                         !syn.witness.point_weights.empty() && syn.witness.lower_bound > 0.0;
  return {report.worst_slack < 0.0 && !report.pass && witnessed,
          fmt("understated worst_slack %.3g, infeasibility bound at 0.9 C* %.3g",
              report.worst_slack, syn.witness.lower_bound)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"inclusion principle", inclusion_principle},
      {"multilinear inclusion", multilinear_inclusion},
      {"pi2 bracket of the identity", pi2_bracket},
      {"pdt strong duality", pdt_strong_duality},
      {"cohen round trip", cohen_roundtrip},
      {"weighted am-gm gap", weighted_am_gm},
      {"solver cross-validation", solver_cross_validation},
      {"non-vacuity", non_vacuity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      out = criteria[i].run();
    } catch (const std::exception& ex) {
      out = {false, std::string("threw: ") + ex.what()};
    }
    if (!out.pass) ++failed;
    std::printf("%s %zu %s: %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                out.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
