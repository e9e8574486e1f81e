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

#include "instance_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "summability/builders.hpp"
#include "summability/error.hpp"

namespace summability::cli {
namespace {

std::string child(const std::string& ptr, std::string_view key) {
  return ptr + "/" + std::string(key);
}
std::string child(const std::string& ptr, std::size_t index) {
  return ptr + "/" + std::to_string(index);
}

void check_keys(const json& obj, const std::string& ptr,
                std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw InputError("expected an object", ptr);
  for (const auto& item : obj.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || item.key() == a;
    if (!known) throw InputError("unknown field '" + item.key() + "'", child(ptr, item.key()));
  }
}

const json& field(const json& obj, std::string_view key, const std::string& ptr) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError("missing field '" + std::string(key) + "'", ptr);
  return *it;
}

double number(const json& j, const std::string& ptr) {
  if (!j.is_number()) throw InputError("expected a number", ptr);
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw InputError("number is not finite", ptr);
  return x;
}

double number_field(const json& obj, std::string_view key, const std::string& ptr) {
  return number(field(obj, key, ptr), child(ptr, key));
}

// Literals like 3 parse as unsigned, but documents built in code hold signed values.
bool nonnegative_integer(const json& j) {
  return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

std::size_t count(const json& j, const std::string& ptr) {
  if (!nonnegative_integer(j)) {
    throw InputError("expected a nonnegative integer", ptr);
  }
  return j.get<std::size_t>();
}

bool flag(const json& obj, std::string_view key, bool fallback, const std::string& ptr) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) throw InputError("expected a boolean", child(ptr, key));
  return it->get<bool>();
}

std::string text(const json& j, const std::string& ptr) {
  if (!j.is_string()) throw InputError("expected a string", ptr);
  return j.get<std::string>();
}

std::vector<std::string> labels(const json& j, const std::string& ptr) {
  if (!j.is_array()) throw InputError("expected a list of labels", ptr);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(text(j[i], child(ptr, i)));
  return out;
}

std::vector<double> numbers(const json& j, const std::string& ptr) {
  if (!j.is_array()) throw InputError("expected a list of numbers", ptr);
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], child(ptr, i)));
  return out;
}

std::vector<std::vector<double>> rows(const json& j, const std::string& ptr,
                                      std::optional<std::size_t> width) {
  if (!j.is_array()) throw InputError("expected a list of rows", ptr);
  std::vector<std::vector<double>> out;
  for (std::size_t r = 0; r < j.size(); ++r) {
    out.push_back(numbers(j[r], child(ptr, r)));
    const std::size_t want = width ? *width : out.front().size();
    if (out.back().size() != want) {
      throw InputError("row " + std::to_string(r) + " has " + std::to_string(out.back().size()) +
                           " entries, expected " + std::to_string(want),
                       child(ptr, r));
    }
  }
  return out;
}

Table table(const json& j, const std::string& ptr, std::size_t height, std::size_t width) {
  auto data = rows(j, ptr, width);
  if (data.size() != height) {
    throw InputError("table has " + std::to_string(data.size()) + " rows, expected " +
                         std::to_string(height),
                     ptr);
  }
  for (std::size_t r = 0; r < data.size(); ++r) {
    for (std::size_t c = 0; c < data[r].size(); ++c) {
      if (data[r][c] < 0.0) {
        throw InputError("entries must be nonnegative", child(child(ptr, r), c));
      }
    }
  }
  return Table::from_rows(data);
}

std::uint64_t seed_of(const json& obj, const std::string& ptr, std::uint64_t fallback) {
  const auto it = obj.find("seed");
  if (it == obj.end()) return fallback;
  if (!nonnegative_integer(*it)) {
    throw InputError("seed must be a nonnegative integer", ptr + "/seed");
  }
  return it->get<std::uint64_t>();
}

// Rethrows library validation errors as input errors at `ptr`.
template <class F>
auto guarded(const std::string& ptr, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw InputError(e.what(), ptr);
  }
}

LoadedInstance parse_summing(const json& doc, std::uint64_t default_seed) {
  check_keys(doc, "", {"kind", "points", "v", "w", "s", "r", "seed", "scale"});
  auto points = labels(field(doc, "points", ""), "/points");
  auto v = labels(field(doc, "v", ""), "/v");
  auto w = labels(field(doc, "w", ""), "/w");
  LoadedInstance out;
  out.kind = "summing";
  const bool has_tables = doc.contains("s") || doc.contains("r");
  if (!has_tables) {
    // Random tables sized by the label lists.
    const std::uint64_t seed = seed_of(doc, "", default_seed);
    const double scale = doc.contains("scale") ? number_field(doc, "scale", "") : 1.0;
    auto random = guarded("", [&] {
      return build_random_summing(seed, points.size(), v.size(), w.size(), scale);
    });
    out.summing = guarded("", [&] {
      return SummingInstance(points, v, w, random.s_table(), random.r_table());
    });
  } else {
    if (doc.contains("seed") || doc.contains("scale")) {
      throw InputError("'seed' and 'scale' only apply when 's' and 'r' are omitted", "/seed");
    }
    Table s = table(field(doc, "s", ""), "/s", points.size(), v.size());
    Table r = table(field(doc, "r", ""), "/r", points.size(), w.size());
    out.summing = guarded("", [&] {
      return SummingInstance(points, v, w, std::move(s), std::move(r));
    });
  }
  out.document = summing_to_json(*out.summing);
  return out;
}

LoadedInstance parse_pdt(const json& doc) {
  check_keys(doc, "", {"kind", "t", "atom_sets", "exponents", "data_points", "homogeneous",
                       "approximate"});
  const std::size_t t = count(field(doc, "t", ""), "/t");
  const json& sets = field(doc, "atom_sets", "");
  if (!sets.is_array() || sets.size() != t) {
    throw InputError("atom_sets must list " + std::to_string(t) + " atom sets", "/atom_sets");
  }
  std::vector<std::vector<std::string>> atom_sets;
  for (std::size_t k = 0; k < t; ++k) atom_sets.push_back(labels(sets[k], child("/atom_sets", k)));
  std::vector<double> parts = numbers(field(doc, "exponents", ""), "/exponents");
  if (parts.size() != t) {
    throw InputError("exponents must have " + std::to_string(t) + " entries", "/exponents");
  }
  for (std::size_t k = 0; k < t; ++k) {
    if (!(parts[k] > 0.0)) throw InputError("exponents must be positive", child("/exponents", k));
  }
  const json& data = field(doc, "data_points", "");
  if (!data.is_array()) throw InputError("expected a list of data points", "/data_points");
  std::vector<PdtPoint> points;
  for (std::size_t d = 0; d < data.size(); ++d) {
    const std::string ptr = child("/data_points", d);
    check_keys(data[d], ptr, {"label", "s", "r_tables"});
    PdtPoint point;
    point.label = text(field(data[d], "label", ptr), child(ptr, "label"));
    point.s = number_field(data[d], "s", ptr);
    if (point.s < 0.0) throw InputError("s must be nonnegative", child(ptr, "s"));
    const json& tables = field(data[d], "r_tables", ptr);
    const std::string tptr = child(ptr, "r_tables");
    if (!tables.is_array() || tables.size() != t) {
      throw InputError("r_tables must list " + std::to_string(t) + " tables", tptr);
    }
    for (std::size_t k = 0; k < t; ++k) {
      point.r.push_back(numbers(tables[k], child(tptr, k)));
      if (point.r.back().size() != atom_sets[k].size()) {
        throw InputError("r table has " + std::to_string(point.r.back().size()) +
                             " entries, expected " + std::to_string(atom_sets[k].size()),
                         child(tptr, k));
      }
      for (std::size_t a = 0; a < point.r.back().size(); ++a) {
        if (point.r.back()[a] < 0.0) {
          throw InputError("entries must be nonnegative", child(child(tptr, k), a));
        }
      }
    }
    points.push_back(std::move(point));
  }
  LoadedInstance out;
  out.kind = "pdt";
  out.pdt = guarded("", [&] {
    return PdtInstance(std::move(atom_sets), std::move(parts), std::move(points),
                       flag(doc, "homogeneous", true, ""), flag(doc, "approximate", false, ""));
  });
  out.document = pdt_to_json(*out.pdt);
  return out;
}

NormKind norm_field(const json& obj, std::string_view key, const std::string& ptr,
                    NormKind fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  const std::string name = text(*it, child(ptr, key));
  return guarded(child(ptr, key), [&] { return parse_norm(name); });
}

LoadedInstance parse_operator(const json& doc, std::uint64_t default_seed) {
  check_keys(doc, "", {"kind", "matrix", "domain_norm", "target_norm", "test_grid", "p",
                       "samples", "seed"});
  OperatorSpec spec;
  auto matrix = rows(field(doc, "matrix", ""), "/matrix", std::nullopt);
  if (matrix.empty() || matrix.front().empty()) throw InputError("matrix is empty", "/matrix");
  spec.matrix = Table::from_rows(matrix);
  spec.domain_norm = norm_field(doc, "domain_norm", "", NormKind::kSup);
  spec.target_norm = norm_field(doc, "target_norm", "", NormKind::kTwo);
  spec.test_grid = doc.contains("test_grid")
                       ? rows(doc["test_grid"], "/test_grid", spec.matrix.cols())
                       : default_grid(spec.matrix.cols());
  const double p = number_field(doc, "p", "");
  if (!(p > 0.0)) throw InputError("p must be positive", "/p");

  LoadedInstance out;
  out.kind = "operator";
  out.document = doc;
  if (doc.contains("samples") || spec.domain_norm != NormKind::kSup) {
    const std::size_t samples = doc.contains("samples") ? count(doc["samples"], "/samples") : 256;
    const std::uint64_t seed = seed_of(doc, "", default_seed);
    out.document["samples"] = samples;
    out.document["seed"] = seed;
    out.pdt = guarded("", [&] { return build_sampled_dual(spec, p, samples, seed); });
  } else {
    if (doc.contains("seed")) throw InputError("'seed' needs 'samples'", "/seed");
    auto built = guarded("", [&] { return build_linfty_linear(spec, p); });
    out.pdt = std::move(built.pdt);
    out.summing = std::move(built.summing);
  }
  return out;
}

std::vector<Grid> grids_field(const json& doc, const std::string& key,
                              const std::vector<std::size_t>& dims) {
  if (!doc.contains(key)) return {};
  const json& j = doc[key];
  const std::string ptr = "/" + key;
  if (!j.is_array() || j.size() != dims.size()) {
    throw InputError("expected one grid per factor", ptr);
  }
  std::vector<Grid> out;
  for (std::size_t l = 0; l < dims.size(); ++l) out.push_back(rows(j[l], child(ptr, l), dims[l]));
  return out;
}

LoadedInstance parse_tensor(const json& doc, std::uint64_t default_seed) {
  check_keys(doc, "", {"kind", "builder", "out_dim", "dims", "coefficients", "target_norm",
                       "test_grids", "anchor", "q", "p", "qs", "weights", "a_values",
                       "ystar_grid", "samples", "seed"});
  const std::string builder = text(field(doc, "builder", ""), "/builder");
  TensorSpec spec;
  spec.out_dim = count(field(doc, "out_dim", ""), "/out_dim");
  const json& dims = field(doc, "dims", "");
  if (!dims.is_array()) throw InputError("expected a list of dimensions", "/dims");
  for (std::size_t l = 0; l < dims.size(); ++l) spec.dims.push_back(count(dims[l], child("/dims", l)));
  spec.coefficients = numbers(field(doc, "coefficients", ""), "/coefficients");
  spec.target_norm = norm_field(doc, "target_norm", "", NormKind::kTwo);
  spec.test_grids = grids_field(doc, "test_grids", spec.dims);
  if (doc.contains("anchor")) {
    const auto anchor = grids_field(doc, "anchor", spec.dims);
    std::vector<std::vector<double>> points;
    for (std::size_t l = 0; l < anchor.size(); ++l) {
      if (anchor[l].size() != 1) {
        throw InputError("anchor lists one point per factor", child("/anchor", l));
      }
      points.push_back(anchor[l][0]);
    }
    spec.anchor = std::move(points);
  }
  guarded("", [&] {
    validate(spec);
    return 0;
  });

  auto reject_unless = [&](std::initializer_list<std::string_view> keys) {
    for (std::string_view key : {"q", "p", "qs", "weights", "a_values", "ystar_grid", "samples",
                                 "seed"}) {
      bool allowed = false;
      for (std::string_view k : keys) allowed = allowed || k == key;
      if (!allowed && doc.contains(key)) {
        throw InputError("field '" + std::string(key) + "' does not apply to builder '" +
                             builder + "'",
                         "/" + std::string(key));
      }
    }
  };

  LoadedInstance out;
  out.kind = "tensor";
  out.document = doc;
  if (builder == "cohen") {
    reject_unless({"q", "ystar_grid"});
    const double q = number_field(doc, "q", "");
    Grid ystar = doc.contains("ystar_grid")
                     ? rows(doc["ystar_grid"], "/ystar_grid", spec.out_dim)
                     : Grid{};
    out.pdt = guarded("", [&] { return build_cohen(spec, q, ystar); });
  } else if (builder == "semi-integral") {
    reject_unless({"p"});
    const double p = number_field(doc, "p", "");
    auto built = guarded("", [&] { return build_semi_integral(spec, p); });
    out.pdt = std::move(built.pdt);
    out.summing = built.multiplicative.base();
  } else if (builder == "weighted-dominated") {
    reject_unless({"qs", "weights", "a_values"});
    const auto qs = numbers(field(doc, "qs", ""), "/qs");
    const auto weights =
        doc.contains("weights") ? numbers(doc["weights"], "/weights") : std::vector<double>{1.0};
    std::optional<std::vector<double>> a_values;
    if (doc.contains("a_values")) a_values = numbers(doc["a_values"], "/a_values");
    out.pdt = guarded("", [&] { return build_weighted_dominated(spec, qs, weights, a_values); });
  } else if (builder == "strongly-summing") {
    reject_unless({"p", "samples", "seed"});
    const double p = number_field(doc, "p", "");
    const std::size_t samples = doc.contains("samples") ? count(doc["samples"], "/samples") : 64;
    const std::uint64_t seed = seed_of(doc, "", default_seed);
    out.document["samples"] = samples;
    out.document["seed"] = seed;
    out.pdt = guarded("", [&] { return build_strongly_summing(spec, p, samples, seed); });
  } else {
    throw InputError("unknown builder '" + builder +
                         "' (expected cohen, semi-integral, weighted-dominated, strongly-summing)",
                     "/builder");
  }
  return out;
}

// Structural scan of JSON text that records where each value starts.
class LineLocator {
 public:
  LineLocator(std::string_view text, std::string_view target) : text_(text), target_(target) {}

  std::size_t run() {
    try {
      value("");
    } catch (const Stop&) {
    }
    return found_;
  }

 private:
  struct Stop {};

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
      } else if (c != ' ' && c != '\t' && c != '\r') {
        return;
      }
      ++pos_;
    }
  }

  char peek() {
    skip_space();
    if (pos_ >= text_.size()) throw Stop{};
    return text_[pos_];
  }

  std::string string_token() {
    std::string out;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out += text_[pos_++];
    }
    ++pos_;
    return out;
  }

  void value(const std::string& path) {
    const char c = peek();
    if (path == target_) {
      found_ = line_;
      throw Stop{};
    }
    if (c == '{') {
      ++pos_;
      if (peek() == '}') {
        ++pos_;
        return;
      }
      while (true) {
        if (peek() != '"') throw Stop{};
        std::string key = string_token();
        if (peek() != ':') throw Stop{};
        ++pos_;
        value(path + "/" + key);
        const char next = peek();
        ++pos_;
        if (next == '}') return;
        if (next != ',') throw Stop{};
      }
    } else if (c == '[') {
      ++pos_;
      if (peek() == ']') {
        ++pos_;
        return;
      }
      for (std::size_t i = 0;; ++i) {
        value(path + "/" + std::to_string(i));
        const char next = peek();
        ++pos_;
        if (next == ']') return;
        if (next != ',') throw Stop{};
      }
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() && std::string_view(",]} \t\r\n").find(text_[pos_]) ==
                                        std::string_view::npos) {
        ++pos_;
      }
    }
  }

  std::string_view text_;
  std::string target_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t found_ = 0;
};

}  // namespace

std::size_t locate_line(std::string_view text, std::string_view pointer) {
  return LineLocator(text, pointer).run();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

LoadedInstance instance_from_json(const json& doc, std::uint64_t default_seed) {
  if (!doc.is_object()) throw InputError("instance must be a JSON object");
  const std::string kind = text(field(doc, "kind", ""), "/kind");
  if (kind == "summing") return parse_summing(doc, default_seed);
  if (kind == "pdt") return parse_pdt(doc);
  if (kind == "operator") return parse_operator(doc, default_seed);
  if (kind == "tensor") return parse_tensor(doc, default_seed);
  throw InputError("unknown kind '" + kind + "' (expected summing, pdt, operator, tensor)",
                   "/kind");
}

namespace {

json parse_text(std::string_view text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) line += text[i] == '\n';
    throw InputError(origin + ":" + std::to_string(line) + ": parse error: " + e.what());
  } catch (const json::out_of_range& e) {
    // Literals such as 1e400 overflow while parsing; point at the first one.
    const std::string message = e.what();
    const auto open = message.find('\'');
    const auto close = message.rfind('\'');
    std::size_t line = 0;
    if (open != std::string::npos && close > open) {
      const auto at = text.find(message.substr(open + 1, close - open - 1));
      if (at != std::string_view::npos) {
        line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + at, '\n'));
      }
    }
    throw InputError(origin + ":" + (line ? std::to_string(line) + ":" : "") +
                     " number is not finite: " + message);
  }
}

template <class F>
auto localized(std::string_view text, const std::string& origin, F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    const std::size_t line = e.pointer().empty() ? 0 : locate_line(text, e.pointer());
    std::string where = origin + ":" + (line ? std::to_string(line) + ":" : "");
    if (!e.pointer().empty()) where += " " + e.pointer() + ":";
    throw InputError(where + " " + e.what(), e.pointer());
  }
}

}  // namespace

LoadedInstance load_instance_text(std::string_view text, const std::string& origin,
                                  std::uint64_t default_seed) {
  const json doc = parse_text(text, origin);
  return localized(text, origin, [&] { return instance_from_json(doc, default_seed); });
}

LoadedInstance load_instance_file(const std::string& path, std::uint64_t default_seed) {
  return load_instance_text(read_file(path), path, default_seed);
}

json summing_to_json(const SummingInstance& inst) {
  return json{{"kind", "summing"},         {"points", inst.point_ids()},
              {"v", inst.v_ids()},         {"w", inst.w_ids()},
              {"s", inst.s_table().to_rows()}, {"r", inst.r_table().to_rows()}};
}

json pdt_to_json(const PdtInstance& inst) {
  json points = json::array();
  for (const PdtPoint& p : inst.points()) {
    points.push_back(json{{"label", p.label}, {"s", p.s}, {"r_tables", p.r}});
  }
  return json{{"kind", "pdt"},
              {"t", inst.t()},
              {"atom_sets", inst.atom_sets()},
              {"exponents", inst.exponents().parts},
              {"data_points", std::move(points)},
              {"homogeneous", inst.homogeneous()},
              {"approximate", inst.approximate()}};
}

MeasureFile measures_from_json(const json& doc) {
  check_keys(doc, "", {"kind", "constant", "measures"});
  if (text(field(doc, "kind", ""), "/kind") != "measures") {
    throw InputError("expected kind 'measures'", "/kind");
  }
  MeasureFile out;
  if (doc.contains("constant")) out.constant = number_field(doc, "constant", "");
  const json& list = field(doc, "measures", "");
  if (!list.is_array()) throw InputError("expected a list of measures", "/measures");
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string ptr = child("/measures", k);
    check_keys(list[k], ptr, {"atoms", "mass"});
    MeasureVector mu;
    mu.atoms = labels(field(list[k], "atoms", ptr), child(ptr, "atoms"));
    mu.mass = numbers(field(list[k], "mass", ptr), child(ptr, "mass"));
    if (mu.atoms.size() != mu.mass.size()) {
      throw InputError("atoms and mass differ in length", child(ptr, "mass"));
    }
    out.measures.push_back(std::move(mu));
  }
  return out;
}

MeasureFile load_measures_file(const std::string& path) {
  const std::string contents = read_file(path);
  const json doc = parse_text(contents, path);
  return localized(contents, path, [&] { return measures_from_json(doc); });
}

json measures_to_json(std::optional<double> constant, const std::vector<MeasureVector>& measures) {
  json list = json::array();
  for (const MeasureVector& mu : measures) list.push_back(json{{"atoms", mu.atoms}, {"mass", mu.mass}});
  json out{{"kind", "measures"}, {"measures", std::move(list)}};
  if (constant) out["constant"] = *constant;
  return out;
}

}  // namespace summability::cli
