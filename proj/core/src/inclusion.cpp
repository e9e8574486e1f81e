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

#include "summability/inclusion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "summability/detail/multiset_walk.hpp"
#include "summability/error.hpp"
#include "summability/summing.hpp"

namespace summability {

MultiplicativeInstance::MultiplicativeInstance(SummingInstance base,
                                               std::vector<double> scalar_grid)
    : base_(std::move(base)), scalar_grid_(std::move(scalar_grid)) {
  if (scalar_grid_.empty()) throw Error(ErrorCode::kOutOfRange, "scalar grid is empty");
  for (double s : scalar_grid_) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw Error(ErrorCode::kOutOfRange, "scalar grid entries must be positive and finite");
    }
  }
}

Certificate predict_inclusion(double premise_constant, const Exponents& e) {
  const AlphaParams alpha = compute_alpha(e);
  if (!(premise_constant >= 0.0)) {
    throw Error(ErrorCode::kOutOfRange, "premise constant must be nonnegative");
  }
  Certificate cert;
  cert.kind = CertificateKind::kPredicted;
  cert.constant = std::pow(premise_constant, alpha.constant_exponent);
  cert.metadata.exponents = e;
  cert.metadata.q = e.q2;
  cert.metadata.p = e.p2;
  cert.metadata.alpha = alpha.alpha;
  return cert;
}

namespace {

void record_worst(InclusionReport& report, double slack, double relative,
                  std::span<const std::size_t> counts, bool& have_worst) {
  if (!have_worst || relative < report.worst_relative_slack) {
    report.worst_relative_slack = relative;
    report.worst_slack = slack;
    report.worst_family = WeightVector::from_counts(counts);
    have_worst = true;
  }
}

}  // namespace

InclusionReport check_inclusion_against(const SummingInstance& inst, const Exponents& e,
                                        std::size_t budget, const Certificate& premise) {
  if (budget == 0) throw Error(ErrorCode::kOutOfRange, "budget must be >= 1");
  if (!premise.is_finite()) {
    throw Error(ErrorCode::kPremiseNotCertified, "premise constant is infinite");
  }
  InclusionReport report;
  report.exponents = e;
  report.premise = premise;
  report.predicted = predict_inclusion(premise.constant, e);
  const double alpha = report.predicted.metadata.alpha;
  const double bound = report.predicted.constant;

  const std::size_t n = inst.num_points();
  const std::size_t nv = inst.num_v();
  const std::size_t nw = inst.num_w();
  Table contrib(n, nv + nw);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t v = 0; v < nv; ++v) contrib(j, v) = std::pow(inst.s_table()(j, v), e.q2);
    for (std::size_t w = 0; w < nw; ++w) {
      contrib(j, nv + w) = std::pow(inst.r_table()(j, w), e.p2);
    }
  }

  bool have_worst = false;
  detail::walk_multisets(contrib, budget, [&](std::span<const std::size_t> counts,
                                              std::span<const double> sums) {
    ++report.families_checked;
    const double lhs_raw = *std::max_element(sums.begin(), sums.begin() + nv);
    const double rhs = *std::max_element(sums.begin() + nv, sums.end());
    if (lhs_raw == 0.0 && rhs == 0.0) return;
    const double lhs = std::pow(lhs_raw, 1.0 / alpha);
    if (rhs > 0.0) report.observed_max_ratio = std::max(report.observed_max_ratio, lhs / rhs);
    const double scaled = bound * rhs;
    const double slack = scaled - lhs;
    record_worst(report, slack, slack / std::max(1.0, scaled), counts, have_worst);
  });
  report.pass = !have_worst || report.worst_relative_slack >= -kInclusionRelativeTolerance;
  return report;
}

InclusionReport verify_inclusion(const SummingInstance& inst, const Exponents& e,
                                 std::size_t budget) {
  compute_alpha(e);
  Certificate premise;
  try {
    premise = summing_constant_exact(inst, e.q1, e.p1);
  } catch (const NotSummingError& err) {
    throw Error(ErrorCode::kPremiseNotCertified,
                std::string("premise (q1, p1) constant is infinite: ") + err.what());
  }
  premise.metadata.exponents = e;
  return check_inclusion_against(inst, e, budget, premise);
}

namespace {

// Solves the k x k system in place by Gaussian elimination with partial
// pivoting; nullopt when (numerically) singular.
std::optional<std::vector<double>> solve_square(std::vector<double> a, std::vector<double> b,
                                                std::size_t k) {
  double scale = 0.0;
  for (double x : a) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return std::nullopt;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::abs(a[r * k + col]) > std::abs(a[pivot * k + col])) pivot = r;
    }
    if (std::abs(a[pivot * k + col]) <= 1e-12 * scale) return std::nullopt;
    if (pivot != col) {
      for (std::size_t c = 0; c < k; ++c) std::swap(a[pivot * k + c], a[col * k + c]);
      std::swap(b[pivot], b[col]);
    }
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = a[r * k + col] / a[col * k + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < k; ++c) a[r * k + c] -= f * a[col * k + c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t r = 0; r < k; ++r) b[r] /= a[r * k + r];
  return b;
}

void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double binomial(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return c;
}

constexpr double kMaxVertexSystems = 5e6;

}  // namespace

Certificate multiplicative_premise(const SummingInstance& base, double q1, double p1) {
  if (!(p1 >= 1.0) || !(q1 >= p1) || !std::isfinite(q1)) {
    throw Error(ErrorCode::kOutOfRange, "multiplicative premise needs 1 <= p1 <= q1");
  }
  const std::size_t n = base.num_points();
  Certificate cert;
  cert.metadata.q = q1;
  cert.metadata.p = p1;

  if (q1 == p1) {
    Certificate lp = summing_constant_exact(base, q1, p1);
    cert.kind = CertificateKind::kExactLP;
    cert.constant = std::pow(lp.constant, 1.0 / p1);
    cert.witness = lp.witness;
    return cert;
  }

  // Rows with S identically zero never help the numerator; drop them.
  std::vector<std::size_t> rows;
  for (std::size_t j = 0; j < n; ++j) {
    const auto s = base.s_table().row(j);
    if (std::none_of(s.begin(), s.end(), [](double x) { return x > 0.0; })) continue;
    const auto r = base.r_table().row(j);
    if (std::none_of(r.begin(), r.end(), [](double x) { return x > 0.0; })) {
      throw NotSummingError(ErrorCode::kNotSumming,
                            "point '" + base.point_ids()[j] +
                                "' has positive S but vanishing R under every scaling",
                            WeightVector::unit(n, j));
    }
    rows.push_back(j);
  }
  cert.kind = CertificateKind::kExactVertex;
  if (rows.empty()) {
    cert.constant = 0.0;
    return cert;
  }

  const std::size_t m = rows.size();
  const std::size_t nw = base.num_w();
  double systems = 0.0;
  for (std::size_t k = 1; k <= std::min(m, nw); ++k) systems += binomial(m, k) * binomial(nw, k);
  if (systems > kMaxVertexSystems) {
    throw Error(ErrorCode::kInvalidArgument,
                "instance too large for exact vertex enumeration (" +
                    std::to_string(static_cast<long long>(systems)) + " systems)");
  }

  const double r_exp = q1 / p1;
  Table s_pow(m, base.num_v());
  Table r_pow(m, nw);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t v = 0; v < base.num_v(); ++v) {
      s_pow(i, v) = std::pow(base.s_table()(rows[i], v), q1);
    }
    for (std::size_t w = 0; w < nw; ++w) r_pow(i, w) = std::pow(base.r_table()(rows[i], w), p1);
  }

  double best = -1.0;
  std::vector<double> best_a(m, 0.0);
  for (std::size_t k = 1; k <= std::min(m, nw); ++k) {
    for_each_combination(m, k, [&](const std::vector<std::size_t>& support) {
      for_each_combination(nw, k, [&](const std::vector<std::size_t>& tight) {
        std::vector<double> a(k * k);
        for (std::size_t r = 0; r < k; ++r) {
          for (std::size_t c = 0; c < k; ++c) a[r * k + c] = r_pow(support[c], tight[r]);
        }
        const auto sol = solve_square(std::move(a), std::vector<double>(k, 1.0), k);
        if (!sol) return;
        std::vector<double> point(m, 0.0);
        for (std::size_t c = 0; c < k; ++c) {
          if ((*sol)[c] < -1e-12) return;
          point[support[c]] = std::max(0.0, (*sol)[c]);
        }
        for (std::size_t w = 0; w < nw; ++w) {
          double used = 0.0;
          for (std::size_t i = 0; i < m; ++i) used += point[i] * r_pow(i, w);
          if (used > 1.0 + 1e-9) return;
        }
        double value = 0.0;
        for (std::size_t v = 0; v < base.num_v(); ++v) {
          double sum = 0.0;
          for (std::size_t i = 0; i < m; ++i) {
            if (point[i] > 0.0) sum += std::pow(point[i], r_exp) * s_pow(i, v);
          }
          value = std::max(value, sum);
        }
        if (value > best) {
          best = value;
          best_a = point;
        }
      });
    });
  }
  if (best < 0.0) {
    throw Error(ErrorCode::kNumericalFailure, "vertex enumeration found no feasible vertex");
  }
  cert.constant = std::pow(best, 1.0 / q1);
  std::vector<double> scalings(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) scalings[rows[i]] = best_a[i];
  cert.witness = WeightVector::from_reals(std::move(scalings));
  return cert;
}

InclusionReport check_multilinear_against(const MultiplicativeInstance& minst,
                                          const Exponents& e, std::size_t budget,
                                          const Certificate& premise) {
  if (!check_admissible(e)) {
    throw Error(ErrorCode::kInadmissibleExponents, "exponents are not admissible");
  }
  if (budget == 0) throw Error(ErrorCode::kOutOfRange, "budget must be >= 1");
  if (!premise.is_finite()) {
    throw Error(ErrorCode::kPremiseNotCertified, "premise constant is infinite");
  }
  InclusionReport report;
  report.exponents = e;
  report.premise = premise;
  report.predicted.kind = CertificateKind::kPredicted;
  report.predicted.constant = premise.constant;
  report.predicted.metadata.exponents = e;
  report.predicted.metadata.q = e.q2;
  report.predicted.metadata.p = e.p2;
  report.predicted.metadata.alpha = 1.0;
  const double bound = premise.constant;

  const SummingInstance& base = minst.base();
  const auto& grid = minst.scalar_grid();
  const std::size_t nv = base.num_v();
  const std::size_t nw = base.num_w();
  Table contrib(minst.num_atoms(), nv + nw);
  for (std::size_t j = 0; j < base.num_points(); ++j) {
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const std::size_t atom = j * grid.size() + g;
      for (std::size_t v = 0; v < nv; ++v) {
        contrib(atom, v) = std::pow(grid[g] * base.s_table()(j, v), e.q2);
      }
      for (std::size_t w = 0; w < nw; ++w) {
        contrib(atom, nv + w) = std::pow(grid[g] * base.r_table()(j, w), e.p2);
      }
    }
  }

  bool have_worst = false;
  detail::walk_multisets(contrib, budget, [&](std::span<const std::size_t> counts,
                                              std::span<const double> sums) {
    ++report.families_checked;
    const double lhs_raw = *std::max_element(sums.begin(), sums.begin() + nv);
    const double rhs_raw = *std::max_element(sums.begin() + nv, sums.end());
    if (lhs_raw == 0.0 && rhs_raw == 0.0) return;
    const double lhs = std::pow(lhs_raw, 1.0 / e.q2);
    const double rhs = std::pow(rhs_raw, 1.0 / e.p2);
    if (rhs > 0.0) report.observed_max_ratio = std::max(report.observed_max_ratio, lhs / rhs);
    const double scaled = bound * rhs;
    const double slack = scaled - lhs;
    record_worst(report, slack, slack / std::max(1.0, scaled), counts, have_worst);
  });
  report.pass = !have_worst || report.worst_relative_slack >= -kInclusionRelativeTolerance;
  return report;
}

InclusionReport verify_multilinear_inclusion(const MultiplicativeInstance& minst,
                                             const Exponents& e, std::size_t budget) {
  if (!check_admissible(e)) {
    throw Error(ErrorCode::kInadmissibleExponents, "exponents are not admissible");
  }
  Certificate premise;
  try {
    premise = multiplicative_premise(minst.base(), e.q1, e.p1);
  } catch (const NotSummingError& err) {
    throw Error(ErrorCode::kPremiseNotCertified,
                std::string("premise (q1, p1) constant is infinite: ") + err.what());
  }
  premise.metadata.exponents = e;
  return check_multilinear_against(minst, e, budget, premise);
}

}  // namespace summability
