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

#include "summability/builders.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "summability/error.hpp"

namespace summability {
namespace {

constexpr std::size_t kGridCap = 64;

// Calls f(indices) for every index tuple of the given radices, last index
// fastest.
template <class F>
void for_each_product(std::span<const std::size_t> radices, F&& f) {
  for (std::size_t r : radices) {
    if (r == 0) return;
  }
  std::vector<std::size_t> idx(radices.size(), 0);
  while (true) {
    f(std::span<const std::size_t>(idx));
    std::size_t pos = radices.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < radices[pos]) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
    if (radices.empty()) return;
  }
}

std::vector<std::string> basis_labels(std::size_t dim) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < dim; ++i) out.push_back("e" + std::to_string(i + 1));
  return out;
}

std::vector<double> mat_vec(const Table& a, std::span<const double> x) {
  std::vector<double> out(a.rows(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out[r] += a(r, c) * x[c];
  }
  return out;
}

void check_grid(const Grid& grid, std::size_t dim, const std::string& what) {
  if (grid.empty()) throw Error(ErrorCode::kShapeMismatch, what + " is empty");
  for (std::size_t g = 0; g < grid.size(); ++g) {
    if (grid[g].size() != dim) {
      throw Error(ErrorCode::kShapeMismatch, what + " point " + std::to_string(g) + " has " +
                                                 std::to_string(grid[g].size()) +
                                                 " coordinates, expected " + std::to_string(dim));
    }
    for (double x : grid[g]) {
      if (!std::isfinite(x)) throw Error(ErrorCode::kOutOfRange, what + " entry is not finite");
    }
  }
}

void check_operator(const OperatorSpec& spec) {
  if (spec.matrix.rows() == 0 || spec.matrix.cols() == 0) {
    throw Error(ErrorCode::kShapeMismatch, "operator matrix is empty");
  }
  for (double x : spec.matrix.values()) {
    if (!std::isfinite(x)) throw Error(ErrorCode::kOutOfRange, "operator matrix entry is not finite");
  }
  check_grid(spec.test_grid, spec.matrix.cols(), "test grid");
}

double gaussian(std::mt19937_64& rng) {
  const double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double random_sign(std::mt19937_64& rng) { return (rng() >> 63) != 0 ? 1.0 : -1.0; }

std::vector<double> sample_dual_sphere(std::mt19937_64& rng, std::size_t dim, NormKind domain) {
  std::vector<double> phi(dim);
  switch (domain) {
    case NormKind::kSup: {
      double total = 0.0;
      for (double& x : phi) {
        x = -std::log1p(-uniform01(rng));
        total += x;
      }
      for (double& x : phi) x = random_sign(rng) * x / total;
      break;
    }
    case NormKind::kOne: {
      for (double& x : phi) x = 2.0 * uniform01(rng) - 1.0;
      const std::size_t face = std::min<std::size_t>(
          dim - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(dim)));
      phi[face] = random_sign(rng);
      break;
    }
    case NormKind::kTwo: {
      double total = 0.0;
      for (double& x : phi) {
        x = gaussian(rng);
        total += x * x;
      }
      total = std::sqrt(total);
      for (double& x : phi) x /= total;
      break;
    }
  }
  return phi;
}

// Full sign vectors with a leading +1.
Grid sign_vectors(std::size_t dim) {
  Grid out;
  const std::size_t count = std::size_t{1} << (dim - 1);
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<double> x(dim, 1.0);
    for (std::size_t i = 1; i < dim; ++i) {
      if ((mask >> (i - 1)) & 1U) x[i] = -1.0;
    }
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<std::size_t> grid_sizes(const std::vector<Grid>& grids) {
  std::vector<std::size_t> out;
  for (const Grid& g : grids) out.push_back(g.size());
  return out;
}

std::vector<std::vector<double>> pick(const std::vector<Grid>& grids,
                                      std::span<const std::size_t> idx) {
  std::vector<std::vector<double>> out;
  for (std::size_t l = 0; l < grids.size(); ++l) out.push_back(grids[l][idx[l]]);
  return out;
}

// |T(a + x) - T(a)| when anchored, |T(x)| otherwise.
double translated_norm(const TensorSpec& spec, const std::vector<std::vector<double>>& x) {
  if (!spec.anchor) return vector_norm(apply_tensor(spec, x), spec.target_norm);
  std::vector<std::vector<double>> shifted = x;
  for (std::size_t l = 0; l < x.size(); ++l) {
    for (std::size_t i = 0; i < x[l].size(); ++i) shifted[l][i] += (*spec.anchor)[l][i];
  }
  std::vector<double> moved = apply_tensor(spec, shifted);
  const std::vector<double> base = apply_tensor(spec, *spec.anchor);
  for (std::size_t o = 0; o < moved.size(); ++o) moved[o] -= base[o];
  return vector_norm(moved, spec.target_norm);
}

bool anchor_is_trivial(const TensorSpec& spec) {
  if (!spec.anchor || spec.order() == 1) return true;
  for (const auto& a : *spec.anchor) {
    if (std::any_of(a.begin(), a.end(), [](double x) { return x != 0.0; })) return false;
  }
  return true;
}

}  // namespace

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string_view to_string(NormKind norm) {
  switch (norm) {
    case NormKind::kSup: return "sup";
    case NormKind::kOne: return "one";
    case NormKind::kTwo: return "two";
  }
  return "unknown";
}

NormKind parse_norm(std::string_view name) {
  if (name == "sup") return NormKind::kSup;
  if (name == "one") return NormKind::kOne;
  if (name == "two") return NormKind::kTwo;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown norm '" + std::string(name) + "' (expected sup, one or two)");
}

double vector_norm(std::span<const double> x, NormKind norm) {
  double out = 0.0;
  switch (norm) {
    case NormKind::kSup:
      for (double v : x) out = std::max(out, std::abs(v));
      return out;
    case NormKind::kOne:
      for (double v : x) out += std::abs(v);
      return out;
    case NormKind::kTwo:
      for (double v : x) out += v * v;
      return std::sqrt(out);
  }
  return out;
}

Grid default_grid(std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::kShapeMismatch, "grid dimension must be >= 1");
  Grid out;
  for (std::size_t i = 0; i < dim && out.size() < kGridCap; ++i) {
    std::vector<double> e(dim, 0.0);
    e[i] = 1.0;
    out.push_back(std::move(e));
  }
  if (dim > 1) {
    const std::size_t count = dim - 1 < 63 ? std::size_t{1} << (dim - 1) : kGridCap;
    for (std::size_t mask = 0; mask < count && out.size() < kGridCap; ++mask) {
      std::vector<double> x(dim, 1.0);
      for (std::size_t i = 1; i < dim && i <= 63; ++i) {
        if ((mask >> (i - 1)) & 1U) x[i] = -1.0;
      }
      out.push_back(std::move(x));
    }
  }
  return out;
}

LinearBuild build_linfty_linear(const OperatorSpec& spec, double p) {
  if (spec.domain_norm != NormKind::kSup) {
    throw Error(ErrorCode::kUnsupportedDomainNorm,
                "exact dual atoms need a sup-norm domain, got '" +
                    std::string(to_string(spec.domain_norm)) + "'");
  }
  check_operator(spec);
  const std::size_t d = spec.matrix.cols();
  const std::size_t n = spec.test_grid.size();
  std::vector<std::string> atoms = basis_labels(d);
  std::vector<PdtPoint> points;
  std::vector<std::string> ids;
  Table s_table(n, 1);
  Table r_table(n, d);
  for (std::size_t g = 0; g < n; ++g) {
    const auto& x = spec.test_grid[g];
    PdtPoint point;
    point.label = "x" + std::to_string(g);
    point.s = vector_norm(mat_vec(spec.matrix, x), spec.target_norm);
    point.r.emplace_back(d);
    for (std::size_t i = 0; i < d; ++i) {
      point.r[0][i] = std::abs(x[i]);
      r_table(g, i) = std::abs(x[i]);
    }
    s_table(g, 0) = point.s;
    ids.push_back(point.label);
    points.push_back(std::move(point));
  }
  return LinearBuild{
      PdtInstance({atoms}, {p}, std::move(points)),
      SummingInstance(std::move(ids), {"norm"}, atoms, std::move(s_table), std::move(r_table))};
}

PdtInstance build_sampled_dual(const OperatorSpec& spec, double p, std::size_t samples,
                               std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorCode::kOutOfRange, "samples must be >= 1");
  check_operator(spec);
  const std::size_t d = spec.matrix.cols();
  std::mt19937_64 rng(seed);
  Grid phis;
  std::vector<std::string> atoms;
  for (std::size_t a = 0; a < samples; ++a) {
    phis.push_back(sample_dual_sphere(rng, d, spec.domain_norm));
    atoms.push_back("phi" + std::to_string(a));
  }
  std::vector<PdtPoint> points;
  for (std::size_t g = 0; g < spec.test_grid.size(); ++g) {
    const auto& x = spec.test_grid[g];
    PdtPoint point;
    point.label = "x" + std::to_string(g);
    point.s = vector_norm(mat_vec(spec.matrix, x), spec.target_norm);
    point.r.emplace_back(samples);
    for (std::size_t a = 0; a < samples; ++a) {
      double v = 0.0;
      for (std::size_t i = 0; i < d; ++i) v += phis[a][i] * x[i];
      point.r[0][a] = std::abs(v);
    }
    points.push_back(std::move(point));
  }
  return PdtInstance({std::move(atoms)}, {p}, std::move(points), true, true);
}

void validate(const TensorSpec& spec) {
  if (spec.dims.empty()) throw Error(ErrorCode::kShapeMismatch, "tensor has no factors");
  if (spec.out_dim == 0) throw Error(ErrorCode::kShapeMismatch, "tensor output dimension is 0");
  std::size_t size = spec.out_dim;
  for (std::size_t d : spec.dims) {
    if (d == 0) throw Error(ErrorCode::kShapeMismatch, "tensor factor dimension is 0");
    size *= d;
  }
  if (spec.coefficients.size() != size) {
    throw Error(ErrorCode::kShapeMismatch,
                "tensor has " + std::to_string(spec.coefficients.size()) +
                    " coefficients, expected " + std::to_string(size));
  }
  for (double c : spec.coefficients) {
    if (!std::isfinite(c)) throw Error(ErrorCode::kOutOfRange, "tensor coefficient is not finite");
  }
  if (!spec.test_grids.empty() && spec.test_grids.size() != spec.order()) {
    throw Error(ErrorCode::kShapeMismatch, "expected one test grid per factor");
  }
  for (std::size_t l = 0; l < spec.test_grids.size(); ++l) {
    if (!spec.test_grids[l].empty()) {
      check_grid(spec.test_grids[l], spec.dims[l], "test grid " + std::to_string(l));
    }
  }
  if (spec.anchor) {
    if (spec.anchor->size() != spec.order()) {
      throw Error(ErrorCode::kShapeMismatch, "expected one anchor point per factor");
    }
    for (std::size_t l = 0; l < spec.order(); ++l) {
      check_grid({(*spec.anchor)[l]}, spec.dims[l], "anchor " + std::to_string(l));
    }
  }
}

std::vector<double> apply_tensor(const TensorSpec& spec,
                                 std::span<const std::vector<double>> factors) {
  std::vector<double> out(spec.out_dim, 0.0);
  std::vector<std::size_t> radices(spec.dims.begin(), spec.dims.end());
  std::size_t flat = 0;
  const std::size_t block = spec.coefficients.size() / spec.out_dim;
  for_each_product(radices, [&](std::span<const std::size_t> idx) {
    double weight = 1.0;
    for (std::size_t l = 0; l < idx.size(); ++l) weight *= factors[l][idx[l]];
    if (weight != 0.0) {
      for (std::size_t o = 0; o < spec.out_dim; ++o) {
        out[o] += spec.coefficients[o * block + flat] * weight;
      }
    }
    ++flat;
  });
  return out;
}

std::vector<Grid> resolved_grids(const TensorSpec& spec) {
  std::vector<Grid> out;
  for (std::size_t l = 0; l < spec.order(); ++l) {
    if (l < spec.test_grids.size() && !spec.test_grids[l].empty()) {
      out.push_back(spec.test_grids[l]);
    } else {
      out.push_back(default_grid(spec.dims[l]));
    }
  }
  return out;
}

SemiIntegralBuild build_semi_integral(const TensorSpec& spec, double p,
                                      std::vector<double> scalar_grid) {
  validate(spec);
  const std::vector<Grid> grids = resolved_grids(spec);
  std::vector<std::string> atoms;
  std::vector<std::vector<std::size_t>> atom_index;
  for_each_product(spec.dims, [&](std::span<const std::size_t> idx) {
    std::string label = "(";
    for (std::size_t l = 0; l < idx.size(); ++l) {
      label += (l ? "," : "") + std::to_string(idx[l] + 1);
    }
    atoms.push_back(label + ")");
    atom_index.emplace_back(idx.begin(), idx.end());
  });

  std::vector<PdtPoint> points;
  std::vector<std::string> ids;
  std::vector<double> s_values;
  std::vector<std::vector<double>> r_rows;
  for_each_product(grid_sizes(grids), [&](std::span<const std::size_t> idx) {
    const auto x = pick(grids, idx);
    PdtPoint point;
    point.label = "p" + std::to_string(points.size());
    point.s = translated_norm(spec, x);
    point.r.emplace_back(atoms.size());
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      double v = 1.0;
      for (std::size_t l = 0; l < x.size(); ++l) v *= x[l][atom_index[a][l]];
      point.r[0][a] = std::abs(v);
    }
    ids.push_back(point.label);
    s_values.push_back(point.s);
    r_rows.push_back(point.r[0]);
    points.push_back(std::move(point));
  });

  Table s_table(points.size(), 1);
  for (std::size_t j = 0; j < s_values.size(); ++j) s_table(j, 0) = s_values[j];
  SummingInstance base(std::move(ids), {"norm"}, atoms, std::move(s_table),
                       Table::from_rows(r_rows));
  return SemiIntegralBuild{
      PdtInstance({atoms}, {p}, std::move(points), anchor_is_trivial(spec)),
      MultiplicativeInstance(std::move(base), std::move(scalar_grid))};
}

PdtInstance build_cohen(const TensorSpec& spec, double q, Grid ystar_grid) {
  if (!(q > 1.0) || !std::isfinite(q)) {
    throw Error(ErrorCode::kOutOfRange, "Cohen exponent q must be finite and > 1");
  }
  validate(spec);
  if (ystar_grid.empty()) ystar_grid = default_grid(spec.out_dim);
  check_grid(ystar_grid, spec.out_dim, "y* grid");
  const std::vector<Grid> grids = resolved_grids(spec);

  std::vector<PdtPoint> points;
  for_each_product(grid_sizes(grids), [&](std::span<const std::size_t> idx) {
    const auto x = pick(grids, idx);
    const std::vector<double> image = apply_tensor(spec, x);
    double norms = 1.0;
    for (const auto& factor : x) norms *= vector_norm(factor, NormKind::kSup);
    for (const auto& ystar : ystar_grid) {
      PdtPoint point;
      point.label = "p" + std::to_string(points.size());
      double pairing = 0.0;
      for (std::size_t o = 0; o < image.size(); ++o) pairing += ystar[o] * image[o];
      point.s = std::abs(pairing);
      point.r.push_back({norms});
      std::vector<double> coords(ystar.size());
      for (std::size_t o = 0; o < ystar.size(); ++o) coords[o] = std::abs(ystar[o]);
      point.r.push_back(std::move(coords));
      points.push_back(std::move(point));
    }
  });
  return PdtInstance({{"norms"}, basis_labels(spec.out_dim)}, {q, conjugate_exponent(q)},
                     std::move(points));
}

PdtInstance build_weighted_dominated(const TensorSpec& spec, std::span<const double> qs,
                                     std::span<const double> weight_grid,
                                     std::optional<std::vector<double>> a_values) {
  validate(spec);
  if (qs.size() != spec.order()) {
    throw Error(ErrorCode::kShapeMismatch, "expected one exponent per factor");
  }
  if (weight_grid.empty()) throw Error(ErrorCode::kShapeMismatch, "weight grid is empty");
  for (double b : weight_grid) {
    if (!std::isfinite(b)) throw Error(ErrorCode::kOutOfRange, "weight is not finite");
  }
  const std::vector<Grid> grids = resolved_grids(spec);
  const std::vector<std::size_t> sizes = grid_sizes(grids);
  std::size_t grid_points = 1;
  for (std::size_t s : sizes) grid_points *= s;
  if (a_values) {
    if (a_values->size() != grid_points) {
      throw Error(ErrorCode::kShapeMismatch,
                  "A table has " + std::to_string(a_values->size()) + " values for " +
                      std::to_string(grid_points) + " grid points");
    }
    for (double a : *a_values) {
      if (!(a >= 0.0) || !std::isfinite(a)) {
        throw Error(ErrorCode::kOutOfRange, "A table entries must be finite and nonnegative");
      }
    }
  }

  std::vector<std::vector<std::string>> atom_sets;
  for (std::size_t d : spec.dims) atom_sets.push_back(basis_labels(d));
  const std::vector<std::size_t> weight_radices(spec.order(), weight_grid.size());

  std::vector<PdtPoint> points;
  std::size_t flat = 0;
  for_each_product(sizes, [&](std::span<const std::size_t> idx) {
    const auto x = pick(grids, idx);
    const double a = a_values ? (*a_values)[flat] : translated_norm(spec, x);
    for_each_product(weight_radices, [&](std::span<const std::size_t> widx) {
      PdtPoint point;
      point.label = "p" + std::to_string(points.size());
      double weight = 1.0;
      for (std::size_t k = 0; k < x.size(); ++k) {
        const double b = std::abs(weight_grid[widx[k]]);
        weight *= b;
        std::vector<double> r(x[k].size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = b * std::abs(x[k][i]);
        point.r.push_back(std::move(r));
      }
      point.s = weight * a;
      points.push_back(std::move(point));
    });
    ++flat;
  });
  return PdtInstance(std::move(atom_sets), std::vector<double>(qs.begin(), qs.end()),
                     std::move(points));
}

PdtInstance build_strongly_summing(const TensorSpec& spec, double p, std::size_t samples,
                                   std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorCode::kOutOfRange, "samples must be >= 1");
  validate(spec);
  for (std::size_t d : spec.dims) {
    if (d > 12) throw Error(ErrorCode::kOutOfRange, "factor dimension too large for sign grids");
  }
  std::mt19937_64 rng(seed);
  TensorSpec form;
  form.out_dim = 1;
  form.dims = spec.dims;
  form.target_norm = NormKind::kOne;
  std::vector<Grid> signs;
  for (std::size_t d : spec.dims) signs.push_back(sign_vectors(d));

  std::vector<TensorSpec> forms;
  std::vector<std::string> atoms;
  while (forms.size() < samples) {
    form.coefficients.assign(spec.coefficients.size() / spec.out_dim, 0.0);
    for (double& c : form.coefficients) c = gaussian(rng);
    double top = 0.0;
    for_each_product(grid_sizes(signs), [&](std::span<const std::size_t> idx) {
      top = std::max(top, std::abs(apply_tensor(form, pick(signs, idx))[0]));
    });
    if (!(top > 0.0)) continue;
    for (double& c : form.coefficients) c /= top;
    atoms.push_back("form" + std::to_string(forms.size()));
    forms.push_back(form);
  }

  const std::vector<Grid> grids = resolved_grids(spec);
  std::vector<PdtPoint> points;
  for_each_product(grid_sizes(grids), [&](std::span<const std::size_t> idx) {
    const auto x = pick(grids, idx);
    PdtPoint point;
    point.label = "p" + std::to_string(points.size());
    point.s = translated_norm(spec, x);
    point.r.emplace_back(samples);
    for (std::size_t a = 0; a < samples; ++a) {
      point.r[0][a] = std::abs(apply_tensor(forms[a], x)[0]);
    }
    points.push_back(std::move(point));
  });
  return PdtInstance({std::move(atoms)}, {p}, std::move(points), anchor_is_trivial(spec), true);
}

SummingInstance build_random_summing(std::uint64_t seed, std::size_t n, std::size_t v,
                                     std::size_t w, double scale) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::kOutOfRange, "scale must be finite and nonnegative");
  }
  std::mt19937_64 rng(seed);
  Table s(n, v);
  Table r(n, w);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < v; ++c) s(j, c) = scale * uniform01(rng);
    for (std::size_t c = 0; c < w; ++c) r(j, c) = scale * uniform01(rng);
  }
  std::vector<std::string> ids;
  std::vector<std::string> v_ids;
  std::vector<std::string> w_ids;
  for (std::size_t j = 0; j < n; ++j) ids.push_back("z" + std::to_string(j));
  for (std::size_t c = 0; c < v; ++c) v_ids.push_back("v" + std::to_string(c));
  for (std::size_t c = 0; c < w; ++c) w_ids.push_back("w" + std::to_string(c));
  return SummingInstance(std::move(ids), std::move(v_ids), std::move(w_ids), std::move(s),
                         std::move(r));
}

MultiplicativeInstance build_random_multiplicative(std::uint64_t seed, std::size_t n,
                                                   std::size_t v, std::size_t w, double scale,
                                                   std::vector<double> scalar_grid) {
  return MultiplicativeInstance(build_random_summing(seed, n, v, w, scale),
                                std::move(scalar_grid));
}

PdtInstance build_random_pdt(std::uint64_t seed, std::size_t atoms, std::size_t points,
                             double p, double scale) {
  if (atoms == 0 || points == 0) throw Error(ErrorCode::kEmptyInstance, "sizes must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < atoms; ++a) labels.push_back("k" + std::to_string(a));
  std::vector<PdtPoint> out;
  for (std::size_t d = 0; d < points; ++d) {
    PdtPoint point;
    point.label = "d" + std::to_string(d);
    point.s = scale * uniform01(rng);
    point.r.emplace_back(atoms);
    for (double& r : point.r[0]) r = scale * uniform01(rng);
    out.push_back(std::move(point));
  }
  return PdtInstance({std::move(labels)}, {p}, std::move(out));
}

TensorSpec random_tensor_spec(std::uint64_t seed, std::size_t out_dim,
                              std::vector<std::size_t> dims, NormKind target_norm) {
  TensorSpec spec;
  spec.out_dim = out_dim;
  spec.dims = std::move(dims);
  spec.target_norm = target_norm;
  std::size_t size = out_dim;
  for (std::size_t d : spec.dims) size *= d;
  std::mt19937_64 rng(seed);
  spec.coefficients.resize(size);
  for (double& c : spec.coefficients) c = 2.0 * uniform01(rng) - 1.0;
  validate(spec);
  return spec;
}

}  // namespace summability
