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

#include "summability/pdt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "summability/bisect.hpp"
#include "summability/detail/multiset_walk.hpp"
#include "summability/error.hpp"
#include "summability/lp.hpp"

namespace summability {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogGuard = 1e-300;

void require_entry(double x, const std::string& where) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw Error(ErrorCode::kOutOfRange, where + " must be finite and nonnegative");
  }
}

void check_measures(const PdtInstance& inst, const std::vector<MeasureVector>& measures) {
  if (measures.size() != inst.t()) {
    throw Error(ErrorCode::kMeasureShapeMismatch,
                "expected " + std::to_string(inst.t()) + " measures, got " +
                    std::to_string(measures.size()));
  }
  for (std::size_t k = 0; k < inst.t(); ++k) {
    if (measures[k].atoms != inst.atom_sets()[k]) {
      throw Error(ErrorCode::kMeasureShapeMismatch,
                  "measure " + std::to_string(k) + " does not match atom set " +
                      std::to_string(k));
    }
    if (!measures[k].is_valid()) {
      throw Error(ErrorCode::kMeasureShapeMismatch,
                  "measure " + std::to_string(k) + " is not a probability vector");
    }
  }
}

// sum_a mu(a) r(a)^p
double raw_moment(const MeasureVector& mu, const std::vector<double>& r, double p) {
  double m = 0.0;
  for (std::size_t a = 0; a < r.size(); ++a) {
    if (mu.mass[a] > 0.0) m += mu.mass[a] * std::pow(r[a], p);
  }
  return m;
}

bool kernel_vanishes(const PdtPoint& point, std::size_t k) {
  return std::all_of(point.r[k].begin(), point.r[k].end(), [](double x) { return x == 0.0; });
}

// First kernel with more than one atom, or 0 when all are singletons. Sets
// `single` to whether at most one such kernel exists.
std::size_t active_kernel(const PdtInstance& inst, bool& single) {
  std::size_t found = inst.t();
  single = true;
  for (std::size_t k = 0; k < inst.t(); ++k) {
    if (inst.atom_sets()[k].size() > 1) {
      if (found != inst.t()) single = false;
      if (found == inst.t()) found = k;
    }
  }
  return found == inst.t() ? 0 : found;
}

double log_objective(const PdtInstance& inst, double constant,
                     const std::vector<MeasureVector>& measures) {
  double worst = -kInf;
  const auto& parts = inst.exponents().parts;
  for (const PdtPoint& point : inst.points()) {
    if (point.s == 0.0) continue;
    double f = std::log(point.s) - std::log(constant);
    for (std::size_t k = 0; k < inst.t(); ++k) {
      f -= std::log(raw_moment(measures[k], point.r[k], parts[k])) / parts[k];
    }
    worst = std::max(worst, f);
  }
  return worst;
}

std::vector<std::size_t> positive_points(const PdtInstance& inst) {
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d < inst.num_points(); ++d) {
    if (inst.points()[d].s > 0.0) out.push_back(d);
  }
  return out;
}

// Contribution columns [s^p | r_1^{p_1} per atom | ... | r_t^{p_t} per atom]
// for the selected points.
Table family_columns(const PdtInstance& inst, const std::vector<std::size_t>& rows) {
  std::size_t width = 1;
  for (const auto& atoms : inst.atom_sets()) width += atoms.size();
  Table contrib(rows.size(), width);
  const auto& ex = inst.exponents();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const PdtPoint& point = inst.points()[rows[i]];
    contrib(i, 0) = std::pow(point.s, ex.combined);
    std::size_t c = 1;
    for (std::size_t k = 0; k < inst.t(); ++k) {
      for (double r : point.r[k]) contrib(i, c++) = std::pow(r, ex.parts[k]);
    }
  }
  return contrib;
}

// (lhs, rhs) of the family inequality from summed contribution columns.
std::pair<double, double> family_sides(const PdtInstance& inst, std::span<const double> sums) {
  const auto& ex = inst.exponents();
  const double lhs = std::pow(sums[0], 1.0 / ex.combined);
  double rhs = 1.0;
  std::size_t c = 1;
  for (std::size_t k = 0; k < inst.t(); ++k) {
    const std::size_t width = inst.atom_sets()[k].size();
    const double top = *std::max_element(sums.begin() + c, sums.begin() + c + width);
    rhs *= std::pow(top, 1.0 / ex.parts[k]);
    c += width;
  }
  return {lhs, rhs};
}

WeightVector spread_counts(std::span<const std::size_t> counts,
                           const std::vector<std::size_t>& rows, std::size_t n) {
  std::vector<std::size_t> full(n, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) full[rows[i]] = counts[i];
  return WeightVector::from_counts(full);
}

std::vector<MeasureVector> build_measures(const PdtInstance& inst,
                                          const std::vector<std::vector<double>>& weights) {
  std::vector<MeasureVector> out;
  out.reserve(inst.t());
  for (std::size_t k = 0; k < inst.t(); ++k) {
    out.push_back(MeasureVector::normalized(inst.atom_sets()[k], weights[k]));
  }
  return out;
}

SynthesisResult finish(const PdtInstance& inst, double constant, double tol,
                       SynthesisResult result) {
  result.report = verify_domination(inst, constant, result.measures, tol);
  result.residual = log_objective(inst, constant, result.measures);
  return result;
}

SynthesisResult hopeless_point(const PdtInstance& inst, double constant, double tol,
                               std::size_t d) {
  SynthesisResult result;
  result.status = SynthesisStatus::kInfeasible;
  result.measures = uniform_measures(inst);
  result.witness.point_weights.assign(inst.num_points(), 0.0);
  result.witness.point_weights[d] = 1.0;
  result.witness.reference = result.measures;
  result.witness.lower_bound = kInf;
  return finish(inst, constant, tol, std::move(result));
}

SynthesisResult synthesize_lp(const PdtInstance& inst, double constant, double tol,
                              std::size_t k0) {
  const auto& parts = inst.exponents().parts;
  const double p0 = parts[k0];
  const std::size_t atoms = inst.atom_sets()[k0].size();
  const std::vector<std::size_t> rows = positive_points(inst);

  SynthesisResult result;
  if (rows.empty()) {
    result.status = SynthesisStatus::kFeasible;
    result.measures = uniform_measures(inst);
    return finish(inst, constant, tol, std::move(result));
  }

  // Constraint for point d: sum_a mu(a) r(a)^{p0} / s'^{p0} >= C^{-p0}, where
  // s' divides out the singleton kernels.
  LpProblem lp;
  lp.constraint_matrix = Table(atoms, rows.size());
  lp.bounds.assign(atoms, 1.0);
  lp.objective.assign(rows.size(), 1.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const PdtPoint& point = inst.points()[rows[i]];
    double log_fixed = 0.0;
    for (std::size_t k = 0; k < inst.t(); ++k) {
      if (k == k0) continue;
      if (point.r[k][0] == 0.0) return hopeless_point(inst, constant, tol, rows[i]);
      log_fixed += std::log(point.r[k][0]);
    }
    if (kernel_vanishes(point, k0)) return hopeless_point(inst, constant, tol, rows[i]);
    const double log_s = std::log(point.s) - log_fixed;
    for (std::size_t a = 0; a < atoms; ++a) {
      const double r = point.r[k0][a];
      lp.constraint_matrix(a, i) = r == 0.0 ? 0.0 : std::exp(p0 * (std::log(r) - log_s));
    }
  }
  const LpResult solved = solve_lp(lp);
  if (solved.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kNumericalFailure, "measure LP did not reach an optimum");
  }

  std::vector<std::vector<double>> weights(inst.t());
  for (std::size_t k = 0; k < inst.t(); ++k) weights[k].assign(inst.atom_sets()[k].size(), 1.0);
  weights[k0] = solved.duals;
  result.measures = build_measures(inst, weights);
  result = finish(inst, constant, tol, std::move(result));
  if (result.report.pass) {
    result.status = SynthesisStatus::kFeasible;
    return result;
  }
  result.status = SynthesisStatus::kInfeasible;
  result.witness.point_weights.assign(inst.num_points(), 0.0);
  const double total = std::accumulate(solved.solution.begin(), solved.solution.end(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    result.witness.point_weights[rows[i]] = solved.solution[i] / total;
  }
  result.witness.reference = result.measures;
  result.witness.lower_bound =
      infeasibility_lower_bound(inst, constant, result.witness.point_weights, result.measures);
  return result;
}

double log_sum_exp(std::span<const double> xs) {
  double top = -kInf;
  for (double x : xs) top = std::max(top, x);
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - top);
  return top + std::log(sum);
}

using KernelWeights = std::vector<std::vector<double>>;

// The log-objective f_i(mu) = log s_i - log C - sum_k log <mu_k, a_ki> / p_k
// over the points with s > 0, where a_ki[j] = r_k(j)^{p_k}.
class LogProgram {
 public:
  LogProgram(const PdtInstance& inst, double constant, std::vector<std::size_t> rows)
      : inst_(inst), constant_(constant), rows_(std::move(rows)), a_(inst.t()) {
    const auto& parts = inst.exponents().parts;
    base_.resize(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const PdtPoint& point = inst.points()[rows_[i]];
      base_[i] = std::log(point.s) - std::log(constant);
      for (std::size_t k = 0; k < inst.t(); ++k) {
        std::vector<double> powered(point.r[k].size());
        for (std::size_t j = 0; j < powered.size(); ++j) {
          powered[j] = std::pow(point.r[k][j], parts[k]);
        }
        a_[k].push_back(std::move(powered));
      }
    }
  }

  std::size_t size() const noexcept { return rows_.size(); }
  std::size_t t() const noexcept { return a_.size(); }
  double part(std::size_t k) const { return inst_.exponents().parts[k]; }
  const std::vector<double>& column(std::size_t k, std::size_t i) const { return a_[k][i]; }

  double moment(const KernelWeights& mu, std::size_t k, std::size_t i) const {
    double m = 0.0;
    for (std::size_t j = 0; j < mu[k].size(); ++j) m += mu[k][j] * a_[k][i][j];
    return m;
  }

  // Fills f and returns its maximum.
  double evaluate(const KernelWeights& mu, std::vector<double>& f) const {
    f.resize(size());
    double worst = -kInf;
    for (std::size_t i = 0; i < size(); ++i) {
      double value = base_[i];
      for (std::size_t k = 0; k < t(); ++k) value -= std::log(moment(mu, k, i) + kLogGuard) / part(k);
      f[i] = value;
      worst = std::max(worst, value);
    }
    return worst;
  }

  // EM sweeps towards argmax_mu sum_i y_i log <mu_k, a_ki>, kernel by kernel.
  void respond(const std::vector<double>& y, KernelWeights& mu) const {
    for (std::size_t k = 0; k < t(); ++k) {
      std::vector<double> grad(mu[k].size());
      for (int sweep = 0; sweep < 500; ++sweep) {
        std::fill(grad.begin(), grad.end(), 0.0);
        for (std::size_t i = 0; i < size(); ++i) {
          const double m = moment(mu, k, i);
          if (m <= 0.0 || y[i] == 0.0) continue;
          for (std::size_t j = 0; j < grad.size(); ++j) grad[j] += y[i] * a_[k][i][j] / m;
        }
        double along = 0.0;
        for (std::size_t j = 0; j < grad.size(); ++j) along += grad[j] * mu[k][j];
        if (*std::max_element(grad.begin(), grad.end()) - along < 1e-13) break;
        double norm = 0.0;
        for (std::size_t j = 0; j < grad.size(); ++j) {
          mu[k][j] *= grad[j];
          norm += mu[k][j];
        }
        if (!(norm > 0.0)) break;
        for (double& x : mu[k]) x /= norm;
      }
    }
  }

  InfeasibilityWitness witness(const std::vector<double>& y, const KernelWeights& mu) const {
    std::vector<double> full(inst_.num_points(), 0.0);
    for (std::size_t i = 0; i < size(); ++i) full[rows_[i]] = y[i];
    auto reference = build_measures(inst_, mu);
    const double bound = infeasibility_lower_bound(inst_, constant_, full, reference);
    return InfeasibilityWitness{std::move(full), std::move(reference), bound};
  }

  // Best certificate reachable from point weights y: exact best response,
  // plus the weights that are optimal for the linearization at `anchor`.
  InfeasibilityWitness certificate(std::vector<double> y, const KernelWeights& anchor) const {
    normalize(y);
    KernelWeights response = anchor;
    respond(y, response);
    InfeasibilityWitness out = witness(y, response);
    std::vector<double> tuned = linearized_weights(anchor);
    if (!tuned.empty()) {
      InfeasibilityWitness linear = witness(tuned, anchor);
      if (linear.lower_bound > out.lower_bound) out = std::move(linear);
      response = anchor;
      respond(tuned, response);
      InfeasibilityWitness exact = witness(tuned, response);
      if (exact.lower_bound > out.lower_bound) out = std::move(exact);
    }
    return out;
  }

  static void normalize(std::vector<double>& y) {
    double total = 0.0;
    for (double w : y) total += std::max(0.0, w);
    for (double& w : y) w = total > 0.0 ? std::max(0.0, w) / total : 0.0;
  }

 private:
  // LP in (y, z): maximize sum_i y_i f_i(anchor) - sum_k z_k / p_k subject to
  // the kernel-k gradient entries of sum_i y_i log <., a_ki> staying below 1 + z_k.
  std::vector<double> linearized_weights(const KernelWeights& anchor) const {
    const std::size_t n = size();
    std::size_t width = 0;
    for (std::size_t k = 0; k < t(); ++k) width += anchor[k].size();
    LpProblem lp;
    lp.objective.assign(n + t(), 0.0);
    lp.constraint_matrix = Table(width + 2, n + t());
    lp.bounds.assign(width + 2, 1.0);
    std::vector<double> f;
    evaluate(anchor, f);
    std::size_t row = 0;
    for (std::size_t k = 0; k < t(); ++k) {
      lp.objective[n + k] = -1.0 / part(k);
      for (std::size_t j = 0; j < anchor[k].size(); ++j, ++row) {
        for (std::size_t i = 0; i < n; ++i) {
          const double m = moment(anchor, k, i);
          lp.constraint_matrix(row, i) = m > 0.0 ? a_[k][i][j] / m : 0.0;
        }
        lp.constraint_matrix(row, n + k) = -1.0;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      lp.objective[i] = f[i];
      lp.constraint_matrix(width, i) = 1.0;
      lp.constraint_matrix(width + 1, i) = -1.0;
    }
    lp.bounds[width + 1] = -1.0;
    LpResult solved;
    try {
      solved = solve_lp(lp);
    } catch (const Error&) {
      return {};
    }
    if (solved.status != LpStatus::kOptimal) return {};
    std::vector<double> y(solved.solution.begin(), solved.solution.begin() + n);
    normalize(y);
    return y;
  }

  const PdtInstance& inst_;
  double constant_;
  std::vector<std::size_t> rows_;
  std::vector<double> base_;
  std::vector<std::vector<std::vector<double>>> a_;
};

// Kelley cutting planes on min_mu max_i f_i(mu). Every linearization of a
// convex f_i is a global underestimator, so the model value is a certified
// lower bound; the LP is solved in its dual form (one column per cut).
class CuttingPlanes {
 public:
  explicit CuttingPlanes(const LogProgram& program) : program_(program) {
    for (std::size_t k = 0; k < program.t(); ++k) width_ += program.column(k, 0).size();
  }

  std::size_t cuts() const noexcept { return cuts_.size(); }

  // Adds the cuts of the `count` largest f_i at mu.
  void add(const KernelWeights& mu, const std::vector<double>& f, std::size_t count) {
    std::vector<std::size_t> order(f.size());
    std::iota(order.begin(), order.end(), 0);
    count = std::min(count, order.size());
    std::partial_sort(order.begin(), order.begin() + count, order.end(),
                      [&](std::size_t x, std::size_t y) { return f[x] > f[y]; });
    for (std::size_t c = 0; c < count; ++c) {
      const std::size_t i = order[c];
      if (!std::isfinite(f[i])) continue;
      Cut cut{i, f[i], std::vector<double>(width_)};
      std::size_t col = 0;
      bool ok = true;
      for (std::size_t k = 0; k < program_.t(); ++k) {
        const double m = program_.moment(mu, k, i);
        ok = ok && m > 0.0;
        for (std::size_t j = 0; j < mu[k].size(); ++j, ++col) {
          cut.slope[col] = ok ? program_.column(k, i)[j] / (program_.part(k) * m) : 0.0;
          cut.offset += cut.slope[col] * mu[k][j];
        }
      }
      if (ok) cuts_.push_back(std::move(cut));
    }
  }

  struct Model {
    bool ok = false;
    double value = -kInf;
    KernelWeights mu;
    std::vector<double> point_weights;
  };

  Model solve(const KernelWeights& fallback) const {
    const std::size_t n = cuts_.size();
    const std::size_t t = program_.t();
    LpProblem lp;
    lp.objective.assign(n + t, 0.0);
    lp.constraint_matrix = Table(width_ + 2, n + t);
    lp.bounds.assign(width_ + 2, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
      lp.objective[c] = cuts_[c].offset;
      for (std::size_t r = 0; r < width_; ++r) lp.constraint_matrix(r, c) = cuts_[c].slope[r];
      lp.constraint_matrix(width_, c) = 1.0;
      lp.constraint_matrix(width_ + 1, c) = -1.0;
    }
    std::size_t row = 0;
    for (std::size_t k = 0; k < t; ++k) {
      lp.objective[n + k] = -1.0;
      for (std::size_t j = 0; j < fallback[k].size(); ++j) lp.constraint_matrix(row++, n + k) = -1.0;
    }
    lp.bounds[width_] = 1.0;
    lp.bounds[width_ + 1] = -1.0;

    Model model;
    LpResult solved;
    try {
      solved = solve_lp(lp);
    } catch (const Error&) {
      return model;
    }
    if (solved.status != LpStatus::kOptimal) return model;
    model.ok = true;
    model.value = solved.value;
    model.mu = fallback;
    row = 0;
    for (std::size_t k = 0; k < t; ++k) {
      double total = 0.0;
      for (std::size_t j = 0; j < fallback[k].size(); ++j) total += solved.duals[row + j];
      if (total > 0.0) {
        for (std::size_t j = 0; j < fallback[k].size(); ++j) {
          model.mu[k][j] = solved.duals[row + j] / total;
        }
      }
      row += fallback[k].size();
    }
    model.point_weights.assign(program_.size(), 0.0);
    for (std::size_t c = 0; c < n; ++c) model.point_weights[cuts_[c].point] += solved.solution[c];
    return model;
  }

 private:
  struct Cut {
    std::size_t point;
    // The cut reads z >= offset - slope . mu.
    double offset;
    std::vector<double> slope;
  };

  const LogProgram& program_;
  std::size_t width_ = 0;
  std::vector<Cut> cuts_;
};

constexpr std::size_t kMirrorIterations = 1000;
constexpr std::size_t kCutsPerRound = 8;
constexpr std::size_t kMaxCuts = 6000;
constexpr double kCutMixing = 1e-6;

SynthesisResult synthesize_mirror(const PdtInstance& inst, double constant, double tol,
                                  std::size_t max_iters) {
  const std::size_t t = inst.t();
  const std::vector<std::size_t> rows = positive_points(inst);
  for (std::size_t d : rows) {
    for (std::size_t k = 0; k < t; ++k) {
      if (kernel_vanishes(inst.points()[d], k)) return hopeless_point(inst, constant, tol, d);
    }
  }
  const LogProgram program(inst, constant, rows);

  KernelWeights log_mu(t);
  KernelWeights mu(t);
  for (std::size_t k = 0; k < t; ++k) {
    const double n = static_cast<double>(inst.atom_sets()[k].size());
    log_mu[k].assign(inst.atom_sets()[k].size(), -std::log(n));
    mu[k].assign(inst.atom_sets()[k].size(), 1.0 / n);
  }

  SynthesisResult result;
  InfeasibilityWitness decided;
  double best = kInf;
  KernelWeights best_mu = mu;
  std::vector<KernelWeights> samples;
  std::vector<double> f;
  std::vector<double> y(rows.size());
  std::vector<double> y_avg(rows.size(), 0.0);
  std::vector<double> scratch(rows.size());
  std::size_t iter = 0;
  const std::size_t mirror_iters = std::min(max_iters, kMirrorIterations);

  // Stage one: entropic mirror descent on a softmax-smoothed maximum.
  for (; iter <= mirror_iters && !rows.empty(); ++iter) {
    const double worst = program.evaluate(mu, f);
    if (worst < best) {
      best = worst;
      best_mu = mu;
    }
    if (best <= 0.0) break;
    if (iter % 50 == 0) samples.push_back(mu);

    const double beta = std::min(1e6, 20.0 * std::sqrt(static_cast<double>(iter) + 1.0));
    for (std::size_t i = 0; i < rows.size(); ++i) scratch[i] = beta * (f[i] - worst);
    const double lse = log_sum_exp(scratch);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      y[i] = std::exp(scratch[i] - lse);
      y_avg[i] += y[i];
    }

    if (iter % 100 == 99) {
      InfeasibilityWitness w = program.certificate(y, best_mu);
      InfeasibilityWitness w_avg = program.certificate(y_avg, best_mu);
      if (w_avg.lower_bound > w.lower_bound) w = std::move(w_avg);
      if (w.lower_bound > 0.0) {
        result.status = SynthesisStatus::kInfeasible;
        decided = std::move(w);
        break;
      }
    }

    const double step = 0.5 / std::sqrt(static_cast<double>(iter) + 1.0);
    for (std::size_t k = 0; k < t; ++k) {
      std::vector<double> grad(mu[k].size(), 0.0);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (y[i] == 0.0) continue;
        const double scale = y[i] / ((program.moment(mu, k, i) + kLogGuard) * program.part(k));
        for (std::size_t j = 0; j < grad.size(); ++j) grad[j] -= scale * program.column(k, i)[j];
      }
      double norm = 0.0;
      for (double g : grad) norm = std::max(norm, std::abs(g));
      if (norm == 0.0) continue;
      for (std::size_t j = 0; j < grad.size(); ++j) log_mu[k][j] -= step * grad[j] / norm;
      const double z = log_sum_exp(log_mu[k]);
      for (std::size_t j = 0; j < grad.size(); ++j) {
        log_mu[k][j] -= z;
        mu[k][j] = std::exp(log_mu[k][j]);
      }
    }
  }

  // Stage two: cutting planes, which close the gap the smoothed descent
  // leaves near the optimum and certify infeasibility through the LP duals.
  if (result.status != SynthesisStatus::kInfeasible && best > 0.0 && !rows.empty() &&
      iter < max_iters) {
    CuttingPlanes planes(program);
    samples.push_back(best_mu);
    for (const KernelWeights& sample : samples) {
      program.evaluate(sample, f);
      planes.add(sample, f, kCutsPerRound);
    }
    double lower = -kInf;
    for (; iter < max_iters && planes.cuts() < kMaxCuts; ++iter) {
      const CuttingPlanes::Model model = planes.solve(best_mu);
      if (!model.ok) break;
      lower = std::max(lower, model.value);
      if (model.value > 0.0) {
        InfeasibilityWitness w = program.certificate(model.point_weights, model.mu);
        if (w.lower_bound > 0.0) {
          result.status = SynthesisStatus::kInfeasible;
          decided = std::move(w);
          break;
        }
      }
      KernelWeights next = model.mu;
      for (std::size_t k = 0; k < t; ++k) {
        for (double& x : next[k]) x = (1.0 - kCutMixing) * x + kCutMixing / next[k].size();
      }
      const double worst = program.evaluate(next, f);
      if (worst < best) {
        best = worst;
        best_mu = next;
      }
      if (best <= 0.0 || best - lower <= 1e-13 * std::max(1.0, std::abs(best))) break;
      planes.add(next, f, kCutsPerRound);
    }
  }

  result.iterations = std::min(iter, max_iters);
  result.measures = build_measures(inst, best_mu);
  const SynthesisStatus status = result.status;
  result = finish(inst, constant, tol, std::move(result));
  if (result.report.pass) {
    result.status = SynthesisStatus::kFeasible;
  } else if (status == SynthesisStatus::kInfeasible) {
    result.status = SynthesisStatus::kInfeasible;
    result.witness = std::move(decided);
  } else {
    result.status = SynthesisStatus::kIterationLimit;
    result.witness = program.certificate(y_avg, best_mu);
  }
  return result;
}

}  // namespace

PdtInstance::PdtInstance(std::vector<std::vector<std::string>> atom_sets,
                         std::vector<double> parts, std::vector<PdtPoint> points,
                         bool homogeneous, bool approximate)
    : atom_sets_(std::move(atom_sets)),
      points_(std::move(points)),
      homogeneous_(homogeneous),
      approximate_(approximate) {
  if (atom_sets_.empty()) throw Error(ErrorCode::kEmptyInstance, "pdt instance has no kernels");
  if (points_.empty()) throw Error(ErrorCode::kEmptyInstance, "pdt instance has no data points");
  if (parts.size() != atom_sets_.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "pdt instance: " + std::to_string(parts.size()) + " exponents for " +
                    std::to_string(atom_sets_.size()) + " kernels");
  }
  exponents_ = harmonic_combine(parts);
  for (std::size_t k = 0; k < atom_sets_.size(); ++k) {
    if (atom_sets_[k].empty()) {
      throw Error(ErrorCode::kEmptyInstance, "atom set " + std::to_string(k) + " is empty");
    }
  }
  for (const PdtPoint& point : points_) {
    const std::string where = "data point '" + point.label + "'";
    require_entry(point.s, where + " s");
    if (point.r.size() != atom_sets_.size()) {
      throw Error(ErrorCode::kShapeMismatch, where + " has " + std::to_string(point.r.size()) +
                                                 " r tables, expected " +
                                                 std::to_string(atom_sets_.size()));
    }
    for (std::size_t k = 0; k < point.r.size(); ++k) {
      if (point.r[k].size() != atom_sets_[k].size()) {
        throw Error(ErrorCode::kShapeMismatch,
                    where + " r table " + std::to_string(k) + " has length " +
                        std::to_string(point.r[k].size()) + ", expected " +
                        std::to_string(atom_sets_[k].size()));
      }
      for (double r : point.r[k]) require_entry(r, where + " r entry");
    }
  }
}

std::vector<MeasureVector> uniform_measures(const PdtInstance& inst) {
  std::vector<MeasureVector> out;
  for (const auto& atoms : inst.atom_sets()) out.push_back(MeasureVector::uniform(atoms));
  return out;
}

std::vector<double> moments(const PdtInstance& inst, const std::vector<MeasureVector>& measures,
                            std::size_t point) {
  const auto& parts = inst.exponents().parts;
  const PdtPoint& pt = inst.points().at(point);
  std::vector<double> tau(inst.t());
  for (std::size_t k = 0; k < inst.t(); ++k) {
    tau[k] = std::pow(raw_moment(measures[k], pt.r[k], parts[k]), 1.0 / parts[k]);
  }
  return tau;
}

SlackReport verify_domination(const PdtInstance& inst, double constant,
                              const std::vector<MeasureVector>& measures, double tolerance) {
  check_measures(inst, measures);
  if (!(constant >= 0.0) || !std::isfinite(constant)) {
    throw Error(ErrorCode::kOutOfRange, "domination constant must be finite and nonnegative");
  }
  SlackReport report;
  report.pass = true;
  for (std::size_t d = 0; d < inst.num_points(); ++d) {
    PointSlack ps;
    ps.label = inst.points()[d].label;
    ps.tau = moments(inst, measures, d);
    ps.bound = constant;
    for (double tau : ps.tau) ps.bound *= tau;
    ps.slack = ps.bound - inst.points()[d].s;
    if (ps.slack < -tolerance * std::max(1.0, ps.bound)) report.pass = false;
    if (d == 0 || ps.slack < report.min_slack) {
      report.min_slack = ps.slack;
      report.argmin_index = d;
      report.argmin_point = ps.label;
    }
    report.per_point.push_back(std::move(ps));
  }
  return report;
}

std::string_view to_string(SynthesisStatus status) {
  switch (status) {
    case SynthesisStatus::kFeasible: return "Feasible";
    case SynthesisStatus::kInfeasible: return "Infeasible";
    case SynthesisStatus::kIterationLimit: return "IterationLimit";
  }
  return "Unknown";
}

SynthesisResult synthesize_measures(const PdtInstance& inst, double constant, double tol,
                                    std::size_t max_iters) {
  if (!inst.homogeneous()) {
    throw Error(ErrorCode::kInvalidArgument,
                "measure synthesis needs a homogeneous instance");
  }
  if (!(constant > 0.0) || !std::isfinite(constant)) {
    throw Error(ErrorCode::kInvalidArgument, "synthesis constant must be positive and finite");
  }
  if (!(tol >= 0.0)) throw Error(ErrorCode::kOutOfRange, "tolerance must be nonnegative");
  bool single = true;
  const std::size_t k0 = active_kernel(inst, single);
  if (single) return synthesize_lp(inst, constant, tol, k0);
  return synthesize_mirror(inst, constant, tol, max_iters);
}

double infeasibility_lower_bound(const PdtInstance& inst, double constant,
                                 std::span<const double> point_weights,
                                 const std::vector<MeasureVector>& reference) {
  check_measures(inst, reference);
  if (point_weights.size() != inst.num_points() || !(constant > 0.0)) return -kInf;
  double total = 0.0;
  for (double w : point_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) return -kInf;
    total += w;
  }
  if (!(total > 0.0)) return -kInf;

  const auto& parts = inst.exponents().parts;
  const std::size_t t = inst.t();
  std::vector<std::size_t> support;
  for (std::size_t d = 0; d < inst.num_points(); ++d) {
    if (point_weights[d] == 0.0) continue;
    const PdtPoint& point = inst.points()[d];
    if (point.s == 0.0) return -kInf;
    for (std::size_t k = 0; k < t; ++k) {
      if (kernel_vanishes(point, k)) return kInf;
    }
    support.push_back(d);
  }

  // Concavity bound: F >= sum_d y_d f_d(mu) and each kernel's
  // sum_d y_d log <mu_k, a_kd> is at most its value at the reference plus
  // the Frank-Wolfe gap there.
  double concave = 0.0;
  for (std::size_t d : support) {
    concave += point_weights[d] / total * (std::log(inst.points()[d].s) - std::log(constant));
  }
  for (std::size_t k = 0; k < t && std::isfinite(concave); ++k) {
    const std::size_t width = inst.atom_sets()[k].size();
    std::vector<double> grad(width, 0.0);
    double value = 0.0;
    for (std::size_t d : support) {
      const double y = point_weights[d] / total;
      const auto& r = inst.points()[d].r[k];
      const double m = raw_moment(reference[k], r, parts[k]);
      if (m == 0.0) {
        concave = -kInf;
        break;
      }
      value += y * std::log(m);
      for (std::size_t a = 0; a < width; ++a) grad[a] += y * std::pow(r[a], parts[k]) / m;
    }
    if (!std::isfinite(concave)) break;
    double along = 0.0;
    for (std::size_t a = 0; a < width; ++a) along += grad[a] * reference[k].mass[a];
    const double gap = *std::max_element(grad.begin(), grad.end()) - along;
    concave -= (value + std::max(0.0, gap)) / parts[k];
  }

  bool single = true;
  const std::size_t k0 = active_kernel(inst, single);
  if (!single) return concave;

  // Linear bound: min_d <mu, b_d> <= max_a sum_d y_d b_d(a) for every mu.
  const double p0 = parts[k0];
  std::vector<double> column(inst.atom_sets()[k0].size(), 0.0);
  for (std::size_t d : support) {
    const PdtPoint& point = inst.points()[d];
    double log_s = std::log(point.s) - std::log(constant);
    for (std::size_t k = 0; k < t; ++k) {
      if (k != k0) log_s -= std::log(point.r[k][0]);
    }
    for (std::size_t a = 0; a < column.size(); ++a) {
      const double r = point.r[k0][a];
      if (r > 0.0) column[a] += point_weights[d] / total * std::exp(p0 * (std::log(r) - log_s));
    }
  }
  const double top = *std::max_element(column.begin(), column.end());
  const double linear = top > 0.0 ? -std::log(top) / p0 : kInf;
  return std::max(concave, linear);
}

PdtFamilyOutcome evaluate_pdt_family(const PdtInstance& inst, const WeightVector& eta) {
  if (eta.size() != inst.num_points()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "family has " + std::to_string(eta.size()) + " weights for " +
                    std::to_string(inst.num_points()) + " data points");
  }
  std::vector<std::size_t> all(inst.num_points());
  std::iota(all.begin(), all.end(), std::size_t{0});
  const Table contrib = family_columns(inst, all);
  std::vector<double> sums(contrib.cols(), 0.0);
  for (std::size_t d = 0; d < inst.num_points(); ++d) {
    if (eta.weights[d] == 0.0) continue;
    const auto row = contrib.row(d);
    for (std::size_t c = 0; c < sums.size(); ++c) sums[c] += eta.weights[d] * row[c];
  }
  PdtFamilyOutcome out;
  std::tie(out.lhs, out.rhs) = family_sides(inst, sums);
  if (out.rhs > 0.0) {
    out.status = RatioStatus::kFinite;
    out.ratio = out.lhs / out.rhs;
  } else {
    out.status = out.lhs > 0.0 ? RatioStatus::kZeroDenominator : RatioStatus::kDegenerate;
  }
  return out;
}

Certificate summing_lb_pdt(const PdtInstance& inst, std::size_t budget) {
  if (budget == 0) throw Error(ErrorCode::kOutOfRange, "budget must be >= 1");
  Certificate cert;
  cert.kind = CertificateKind::kBruteForceLowerBound;
  cert.metadata.p = inst.exponents().combined;
  cert.metadata.budget = budget;
  const std::vector<std::size_t> rows = positive_points(inst);
  if (rows.empty()) {
    cert.witness = WeightVector::unit(inst.num_points(), 0);
    return cert;
  }
  const Table contrib = family_columns(inst, rows);
  double best = -1.0;
  std::size_t checked = 0;
  detail::walk_multisets(contrib, budget, [&](std::span<const std::size_t> counts,
                                              std::span<const double> sums) {
    ++checked;
    const auto [lhs, rhs] = family_sides(inst, sums);
    if (rhs == 0.0) {
      throw NotSummingError(ErrorCode::kNotDominated,
                            "a family has positive left side but vanishing product of sups",
                            spread_counts(counts, rows, inst.num_points()));
    }
    const double ratio = lhs / rhs;
    if (ratio > best) {
      best = ratio;
      cert.witness = spread_counts(counts, rows, inst.num_points());
    }
  });
  cert.constant = best;
  cert.metadata.families_checked = checked;
  return cert;
}

Certificate summing_sup_pdt(const PdtInstance& inst) {
  if (inst.t() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "the LP family supremum needs a single kernel");
  }
  const double p = inst.exponents().combined;
  Certificate cert;
  cert.kind = CertificateKind::kExactLP;
  cert.metadata.p = p;
  const std::vector<std::size_t> rows = positive_points(inst);
  if (rows.empty()) {
    cert.witness = WeightVector::unit(inst.num_points(), 0);
    return cert;
  }
  const std::size_t atoms = inst.atom_sets()[0].size();
  LpProblem lp;
  lp.constraint_matrix = Table(atoms, rows.size());
  lp.bounds.assign(atoms, 1.0);
  lp.objective.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const PdtPoint& point = inst.points()[rows[i]];
    if (kernel_vanishes(point, 0)) {
      throw NotSummingError(ErrorCode::kNotDominated,
                            "data point '" + point.label + "' has s > 0 but r = 0 on every atom",
                            WeightVector::unit(inst.num_points(), rows[i]));
    }
    lp.objective[i] = std::pow(point.s, p);
    for (std::size_t a = 0; a < atoms; ++a) lp.constraint_matrix(a, i) = std::pow(point.r[0][a], p);
  }
  const LpResult solved = solve_lp(lp);
  if (solved.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kNumericalFailure, "family supremum LP did not reach an optimum");
  }
  std::vector<double> eta(inst.num_points(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) eta[rows[i]] = std::max(0.0, solved.solution[i]);
  cert.constant = std::pow(solved.value, 1.0 / p);
  cert.witness = WeightVector::from_reals(std::move(eta));
  return cert;
}

Certificate best_constant_duality(const PdtInstance& inst, double tol) {
  if (!(tol > 0.0) || !(tol < 1.0)) throw Error(ErrorCode::kOutOfRange, "tol must lie in (0, 1)");
  const std::vector<MeasureVector> uniform = uniform_measures(inst);
  double upper = 0.0;
  for (std::size_t d = 0; d < inst.num_points(); ++d) {
    const double s = inst.points()[d].s;
    if (s == 0.0) continue;
    double prod = 1.0;
    for (double tau : moments(inst, uniform, d)) prod *= tau;
    if (prod == 0.0) {
      throw Error(ErrorCode::kNotDominated, "data point '" + inst.points()[d].label +
                                                "' has s > 0 but a vanishing moment");
    }
    upper = std::max(upper, s / prod);
  }

  Certificate cert;
  cert.kind = CertificateKind::kDomination;
  cert.metadata.p = inst.exponents().combined;
  cert.metadata.tolerance = tol;
  if (upper == 0.0) {
    cert.witness = uniform;
    return cert;
  }
  const double lower = summing_lb_pdt(inst, 1).constant;
  const double synth_tol = std::max(1e-13, 1e-2 * tol);
  // Bisect on C / lower so the stopping rule is relative.
  auto feasible = [&](double u) {
    return synthesize_measures(inst, u * lower, synth_tol).status == SynthesisStatus::kFeasible;
  };
  double constant = lower;
  if (!feasible(1.0)) {
    double hi = upper / lower;
    int widen = 0;
    while (!feasible(hi)) {
      if (++widen > 8) throw Error(ErrorCode::kNumericalFailure, "upper bracket not feasible");
      hi *= 1.0 + 1e-9;
    }
    constant = bisect(feasible, 1.0, hi, tol) * lower;
  }
  const SynthesisResult witness = synthesize_measures(inst, (1.0 + tol) * constant, synth_tol);
  cert.constant = constant;
  cert.witness = witness.measures;
  cert.slack = witness.report.min_slack;
  return cert;
}

AmProductReport am_to_product_check(const PdtInstance& inst, double constant,
                                    const std::vector<MeasureVector>& measures) {
  if (!inst.homogeneous()) {
    throw Error(ErrorCode::kInvalidArgument, "the rescaling check needs a homogeneous instance");
  }
  check_measures(inst, measures);
  const HarmonicExponents& ex = inst.exponents();
  const double p = ex.combined;
  AmProductReport report;
  report.min_slack = kInf;
  std::vector<double> terms(inst.t());
  for (std::size_t d = 0; d < inst.num_points(); ++d) {
    const double s = inst.points()[d].s;
    const std::vector<double> tau = moments(inst, measures, d);
    const bool vanishing = std::any_of(tau.begin(), tau.end(), [](double x) { return x == 0.0; });
    if (vanishing || constant == 0.0) {
      report.min_slack = std::min(report.min_slack, -s);
      continue;
    }
    // theta_k = (tau_k beta^{1/(p p_k)})^{-1} with beta large enough that
    // every theta_k <= 1; in logs throughout.
    double log_beta = 1.0;
    for (std::size_t k = 0; k < inst.t(); ++k) {
      log_beta = std::max(log_beta, 1.0 - p * ex.parts[k] * std::log(tau[k]));
    }
    double log_prod = std::log(constant);
    double sum_log_theta = 0.0;
    for (std::size_t k = 0; k < inst.t(); ++k) {
      const double log_tau = std::log(tau[k]);
      const double log_theta = -(log_tau + log_beta / (p * ex.parts[k]));
      sum_log_theta += log_theta;
      log_prod += log_tau;
      terms[k] = ex.parts[k] * (log_theta + log_tau) - std::log(ex.parts[k]);
    }
    const double log_am =
        std::log(constant) + (std::log(p) + log_sum_exp(terms)) / p - sum_log_theta;
    const double product = std::exp(log_prod);
    const double am = std::exp(log_am);
    report.gap = std::max(report.gap, std::abs(am - product) / std::max(1.0, product));
    report.min_slack = std::min(report.min_slack, am - s);
  }
  return report;
}

RoundtripReport roundtrip_check(const PdtInstance& inst, double constant,
                                const std::vector<MeasureVector>& measures, std::size_t budget) {
  if (budget == 0) throw Error(ErrorCode::kOutOfRange, "budget must be >= 1");
  if (!verify_domination(inst, constant, measures).pass) {
    throw Error(ErrorCode::kNotDominated, "measures do not dominate at this constant");
  }
  std::vector<std::size_t> rows = positive_points(inst);
  if (rows.empty()) {
    rows.resize(inst.num_points());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
  }
  const Table contrib = family_columns(inst, rows);
  RoundtripReport report;
  bool first = true;
  detail::walk_multisets(contrib, budget, [&](std::span<const std::size_t> counts,
                                              std::span<const double> sums) {
    ++report.families_checked;
    const auto [lhs, rhs] = family_sides(inst, sums);
    const double scaled = constant * rhs;
    const double slack = scaled - lhs;
    const double relative = slack / std::max(1.0, scaled);
    if (first || relative < report.min_relative_slack) {
      first = false;
      report.min_relative_slack = relative;
      report.min_slack = slack;
      report.worst_family = spread_counts(counts, rows, inst.num_points());
    }
  });
  report.pass = report.min_relative_slack >= -kDominationTolerance;
  return report;
}

}  // namespace summability
