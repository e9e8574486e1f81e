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

#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "instance_io.hpp"
#include "presets.hpp"
#include "report.hpp"
#include "summability/builders.hpp"
#include "summability/error.hpp"
#include "summability/exponents.hpp"
#include "summability/inclusion.hpp"
#include "summability/pdt.hpp"
#include "summability/summing.hpp"

namespace summability::cli {
namespace {

struct Outcome {
  json result;
  bool pass = false;
  int exit_code = kExitViolation;
  std::string summary;
};

struct Options {
  std::string in;
  double q = 1.0;
  double p = 1.0;
  double alpha = 1.0;
  std::size_t budget = 0;
  double p1 = 1.0, q1 = 1.0, p2 = 1.0, q2 = 1.0;
  bool multilinear = false;
  std::vector<double> scalars = kDefaultScalarGrid;
  double constant = 0.0;
  double tol = 0.0;
  double gap_tol = 1e-6;
  std::size_t max_iters = kDefaultSynthesisIterations;
  std::string out_path;
  std::string measures_path;
  std::string preset;
  bool emit = false;
  bool deterministic = false;
  std::uint64_t seed = 0;
};

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotSumming:
    case ErrorCode::kPremiseNotCertified:
    case ErrorCode::kNotDominated:
      return kExitViolation;
    case ErrorCode::kNumericalFailure:
    case ErrorCode::kBracketInvalid:
      return kExitSolverFailure;
    default:
      return kExitUsage;
  }
}

std::string hex(std::uint64_t x) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(x));
  return buffer;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

LoadedInstance load(const Options& opt) {
  constexpr std::string_view kPrefix = "preset:";
  if (opt.in.rfind(kPrefix, 0) == 0) {
    const std::string name = opt.in.substr(kPrefix.size());
    const auto doc = preset_document(name);
    if (!doc) throw InputError("unknown preset '" + name + "'");
    return instance_from_json(*doc, opt.seed);
  }
  return load_instance_file(opt.in, opt.seed);
}

const SummingInstance& need_summing(const LoadedInstance& inst) {
  if (!inst.summing) {
    throw InputError("this command needs a summing instance, a sup-norm operator or a "
                     "semi-integral tensor; got kind '" + inst.kind + "'");
  }
  return *inst.summing;
}

const PdtInstance& need_pdt(const LoadedInstance& inst) {
  if (!inst.pdt) {
    throw InputError("this command needs a pdt, operator or tensor instance; got kind '" +
                     inst.kind + "'");
  }
  return *inst.pdt;
}

Outcome not_summing(const NotSummingError& e) {
  Outcome out;
  out.result = {{"constant", nullptr},
                {"finite", false},
                {"reason", e.what()},
                {"witness", {{"family", to_json(e.witness())}}}};
  out.summary = std::string("no finite constant: ") + e.what();
  return out;
}

Outcome summing_constant(const Options& opt, const LoadedInstance& inst) {
  const SummingInstance& s = need_summing(inst);
  Outcome out;
  try {
    if (opt.alpha == 1.0) {
      const Certificate cert = summing_constant_exact(s, opt.q, opt.p);
      out.result = {{"certificate", to_json(cert)}};
      if (opt.budget > 0) {
        out.result["lower_bound"] =
            to_json(summing_constant_bruteforce(s, opt.q, opt.p, 1.0, opt.budget));
      }
      out.summary = "C = " + fmt(cert.constant) + " (" + std::string(to_string(cert.kind)) + ")";
    } else {
      const std::size_t budget = opt.budget > 0 ? opt.budget : kDefaultFamilyBudget;
      const Certificate cert = summing_constant_bruteforce(s, opt.q, opt.p, opt.alpha, budget);
      out.result = {{"certificate", to_json(cert)}};
      out.summary = "C >= " + fmt(cert.constant) + " over families of size <= " +
                    std::to_string(budget);
    }
  } catch (const NotSummingError& e) {
    return not_summing(e);
  }
  out.pass = true;
  out.exit_code = kExitPass;
  return out;
}

Outcome check_inclusion(const Options& opt, const LoadedInstance& inst) {
  const SummingInstance& s = need_summing(inst);
  const Exponents e{opt.p1, opt.q1, opt.p2, opt.q2};
  const InclusionReport report =
      opt.multilinear
          ? verify_multilinear_inclusion(MultiplicativeInstance(s, opt.scalars), e,
                                         opt.budget > 0 ? opt.budget : 6)
          : verify_inclusion(s, e, opt.budget > 0 ? opt.budget : 6);
  Outcome out;
  out.result = to_json(report);
  if (opt.multilinear) out.result["scalars"] = opt.scalars;
  out.pass = report.pass;
  out.exit_code = report.pass ? kExitPass : kExitViolation;
  out.summary = std::string(report.pass ? "inclusion holds" : "inclusion VIOLATED") +
                ": premise C = " + fmt(report.premise.constant) + ", predicted " +
                fmt(report.predicted.constant) + ", worst relative slack " +
                fmt(report.worst_relative_slack) + " over " +
                std::to_string(report.families_checked) + " families";
  return out;
}

Outcome synthesize(const Options& opt, const LoadedInstance& inst) {
  const PdtInstance& pdt = need_pdt(inst);
  const double tol = opt.tol > 0.0 ? opt.tol : kDominationTolerance;
  const SynthesisResult result = synthesize_measures(pdt, opt.constant, tol, opt.max_iters);
  Outcome out;
  out.result = to_json(result);
  out.result["constant"] = opt.constant;
  out.result["approximate_atoms"] = pdt.approximate();
  if (!opt.out_path.empty() && result.status == SynthesisStatus::kFeasible) {
    std::ofstream file(opt.out_path);
    if (!file) throw InputError("cannot write '" + opt.out_path + "'");
    file << measures_to_json(opt.constant, result.measures).dump(2) << "\n";
  }
  out.pass = result.status == SynthesisStatus::kFeasible;
  out.exit_code = out.pass ? kExitPass
                  : result.status == SynthesisStatus::kInfeasible ? kExitViolation
                                                                  : kExitSolverFailure;
  out.summary = "synthesis at C = " + fmt(opt.constant) + ": " +
                std::string(to_string(result.status)) + ", min slack " +
                fmt(result.report.min_slack);
  return out;
}

Outcome verify(const Options& opt, const LoadedInstance& inst, const MeasureFile& file) {
  const PdtInstance& pdt = need_pdt(inst);
  std::optional<double> constant = file.constant;
  if (opt.constant > 0.0) constant = opt.constant;
  if (!constant) throw InputError("no constant: pass --constant or put one in the measures file");
  const double tol = opt.tol > 0.0 ? opt.tol : kDominationTolerance;
  const SlackReport report = verify_domination(pdt, *constant, file.measures, tol);
  Outcome out;
  out.result = to_json(report);
  out.result["constant"] = *constant;
  out.pass = report.pass;
  out.exit_code = report.pass ? kExitPass : kExitViolation;
  out.summary = std::string(report.pass ? "domination holds" : "domination FAILS") +
                " at C = " + fmt(*constant) + ", min slack " + fmt(report.min_slack) + " at '" +
                report.argmin_point + "'";
  return out;
}

Outcome duality_gap(const Options& opt, const LoadedInstance& inst) {
  const PdtInstance& pdt = need_pdt(inst);
  const double tol = opt.tol > 0.0 ? opt.tol : 1e-9;
  const std::size_t budget = opt.budget > 0 ? opt.budget : 4;
  Outcome out;
  Certificate lower;
  try {
    lower = summing_lb_pdt(pdt, budget);
  } catch (const NotSummingError& e) {
    return not_summing(e);
  }
  out.result["lower_bound"] = to_json(lower);
  double best_lower = lower.constant;
  if (pdt.t() == 1) {
    // The LP optimum is a real-weight family; clearing denominators turns it
    // into an integer family whose ratio is a certified lower bound.
    const Certificate sup = summing_sup_pdt(pdt);
    const WeightVector realized = clear_denominators(*sup.family(), 1000000000ULL);
    const PdtFamilyOutcome ratio = evaluate_pdt_family(pdt, realized);
    out.result["family_supremum"] = to_json(sup);
    out.result["realized_family_ratio"] = ratio.ratio;
    if (ratio.status == RatioStatus::kFinite) best_lower = std::max(best_lower, ratio.ratio);
  }
  const Certificate upper = best_constant_duality(pdt, tol);
  out.result["upper_bound"] = to_json(upper);
  const SlackReport check =
      verify_domination(pdt, (1.0 + tol) * upper.constant, *upper.measures());
  out.result["upper_verification"] = {{"constant", (1.0 + tol) * upper.constant},
                                      {"min_slack", check.min_slack},
                                      {"pass", check.pass}};
  const double gap = upper.constant > 0.0 ? (upper.constant - best_lower) / upper.constant : 0.0;
  out.result["best_lower"] = best_lower;
  out.result["relative_gap"] = gap;
  out.result["gap_tolerance"] = opt.gap_tol;
  out.pass = check.pass && std::abs(gap) <= opt.gap_tol;
  out.exit_code = out.pass ? kExitPass : kExitViolation;
  out.summary = "lower " + fmt(best_lower) + ", upper " + fmt(upper.constant) +
                ", relative gap " + fmt(gap);
  return out;
}

struct Invocation {
  std::string command;
  json flags;
  std::function<Outcome(const LoadedInstance&)> body;
};

int execute(const Options& opt, const Invocation& inv, std::ostream& out, std::ostream& err,
            const std::optional<MeasureFile>* measures = nullptr) {
  const auto start = std::chrono::steady_clock::now();
  json report{{"command", inv.command}};
  json inputs{{"command", inv.command}, {"flags", inv.flags}};
  int code = kExitUsage;
  try {
    const LoadedInstance inst = load(opt);
    inputs["instance"] = inst.document;
    if (measures && *measures) {
      inputs["measures"] = measures_to_json((**measures).constant, (**measures).measures);
    }
    Outcome outcome = inv.body(inst);
    report["result"] = std::move(outcome.result);
    report["pass"] = outcome.pass;
    code = outcome.exit_code;
    err << inv.command << ": " << outcome.summary << "\n";
  } catch (const InputError& e) {
    report["error"] = {{"code", "InputError"}, {"message", e.what()}};
    report["pass"] = false;
    code = kExitUsage;
    err << inv.command << ": error: " << e.what() << "\n";
  } catch (const Error& e) {
    report["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    report["pass"] = false;
    code = exit_for(e.code());
    err << inv.command << ": " << to_string(e.code()) << ": " << e.what() << "\n";
  }
  report["inputs_digest"] = hex(fnv1a(inputs.dump()));
  const auto elapsed = std::chrono::steady_clock::now() - start;
  report["runtime_ms"] =
      opt.deterministic
          ? 0.0
          : std::chrono::duration<double, std::milli>(elapsed).count();
  out << report.dump(2) << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  if (const char* env = std::getenv("SUMMABILITY_SEED")) {
    try {
      std::size_t used = 0;
      opt.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      err << "error: SUMMABILITY_SEED must be a nonnegative integer\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Finite-instance summability constants, inclusion checks and domination measures",
               "summability"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--deterministic", opt.deterministic, "Report runtime_ms as 0");

  auto add_in = [&](CLI::App* sub) {
    sub->add_option("--in", opt.in, "Instance file, or preset:NAME")->required();
  };

  auto* summing = app.add_subcommand("summing-constant", "Best summing constant of an instance");
  add_in(summing);
  summing->add_option("--q", opt.q, "Left exponent")->required();
  summing->add_option("--p", opt.p, "Right exponent")->required();
  summing->add_option("--alpha", opt.alpha, "Root applied to the left side (1 = exact LP)");
  summing->add_option("--budget", opt.budget, "Family budget for the brute-force bound");

  auto* inclusion = app.add_subcommand("check-inclusion", "Check the inclusion transform");
  add_in(inclusion);
  inclusion->add_option("--p1", opt.p1)->required();
  inclusion->add_option("--q1", opt.q1)->required();
  inclusion->add_option("--p2", opt.p2)->required();
  inclusion->add_option("--q2", opt.q2)->required();
  inclusion->add_option("--budget", opt.budget, "Largest family size (default 6)");
  inclusion->add_flag("--multilinear", opt.multilinear, "Scale points by --scalars");
  inclusion->add_option("--scalars", opt.scalars, "Scalar grid")->delimiter(',');

  auto* synth = app.add_subcommand("synthesize-measure", "Find dominating measures at a constant");
  add_in(synth);
  synth->add_option("--constant", opt.constant)->required()->check(CLI::PositiveNumber);
  synth->add_option("--tol", opt.tol, "Slack tolerance (default 1e-8)");
  synth->add_option("--max-iters", opt.max_iters, "Iteration cap for several kernels");
  synth->add_option("--out", opt.out_path, "Write the measures file here");

  auto* verify_cmd = app.add_subcommand("verify-domination", "Check measures pointwise");
  add_in(verify_cmd);
  verify_cmd->add_option("--measures", opt.measures_path)->required();
  verify_cmd->add_option("--constant", opt.constant, "Overrides the file's constant");
  verify_cmd->add_option("--tol", opt.tol, "Slack tolerance (default 1e-8)");

  auto* gap = app.add_subcommand("duality-gap", "Bracket the least dominating constant");
  add_in(gap);
  gap->add_option("--tol", opt.tol, "Bisection tolerance (default 1e-9)");
  gap->add_option("--budget", opt.budget, "Family budget (default 4)");
  gap->add_option("--gap-tol", opt.gap_tol, "Largest accepted relative gap");

  auto* demo = app.add_subcommand("demo", "Run a named preset");
  demo->add_option("name", opt.preset, "identity, two-point-pdt, cohen-2x2, pi2-identity-d2")
      ->required();
  demo->add_flag("--emit", opt.emit, "Print the preset instance instead");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  if (summing->parsed()) {
    return execute(opt,
                   {"summing-constant",
                    {{"q", opt.q}, {"p", opt.p}, {"alpha", opt.alpha}, {"budget", opt.budget}},
                    [&](const LoadedInstance& i) { return summing_constant(opt, i); }},
                   out, err);
  }
  if (inclusion->parsed()) {
    json flags{{"p1", opt.p1}, {"q1", opt.q1}, {"p2", opt.p2}, {"q2", opt.q2},
               {"budget", opt.budget}, {"multilinear", opt.multilinear}};
    if (opt.multilinear) flags["scalars"] = opt.scalars;
    return execute(opt,
                   {"check-inclusion", flags,
                    [&](const LoadedInstance& i) { return check_inclusion(opt, i); }},
                   out, err);
  }
  if (synth->parsed()) {
    return execute(opt,
                   {"synthesize-measure",
                    {{"constant", opt.constant}, {"tol", opt.tol}, {"max_iters", opt.max_iters}},
                    [&](const LoadedInstance& i) { return synthesize(opt, i); }},
                   out, err);
  }
  if (verify_cmd->parsed()) {
    std::optional<MeasureFile> file;
    try {
      file = load_measures_file(opt.measures_path);
    } catch (const InputError& e) {
      err << "verify-domination: error: " << e.what() << "\n";
      json report{{"command", "verify-domination"},
                  {"error", {{"code", "InputError"}, {"message", e.what()}}},
                  {"pass", false},
                  {"inputs_digest", hex(fnv1a(opt.measures_path))},
                  {"runtime_ms", 0.0}};
      out << report.dump(2) << "\n";
      return kExitUsage;
    }
    return execute(opt,
                   {"verify-domination",
                    {{"constant", opt.constant}, {"tol", opt.tol}},
                    [&](const LoadedInstance& i) { return verify(opt, i, *file); }},
                   out, err, &file);
  }
  if (gap->parsed()) {
    return execute(opt,
                   {"duality-gap",
                    {{"tol", opt.tol}, {"budget", opt.budget}, {"gap_tol", opt.gap_tol}},
                    [&](const LoadedInstance& i) { return duality_gap(opt, i); }},
                   out, err);
  }

  // demo
  const auto doc = preset_document(opt.preset);
  if (!doc) {
    err << "demo: unknown preset '" << opt.preset << "'; available:";
    for (const auto& name : preset_names()) err << " " << name;
    err << "\n";
    return kExitUsage;
  }
  if (opt.emit) {
    out << doc->dump(2) << "\n";
    return kExitPass;
  }
  Options demo_opt = opt;
  demo_opt.in = "preset:" + opt.preset;
  std::function<Outcome(const LoadedInstance&)> body;
  std::string dispatched;
  if (opt.preset == "identity") {
    demo_opt.q = 1.0;
    demo_opt.p = 1.0;
    dispatched = "summing-constant";
    body = [&](const LoadedInstance& i) { return summing_constant(demo_opt, i); };
  } else {
    demo_opt.budget = opt.preset == "pi2-identity-d2" ? 6 : 4;
    dispatched = "duality-gap";
    body = [&](const LoadedInstance& i) { return duality_gap(demo_opt, i); };
  }
  return execute(demo_opt,
                 {"demo",
                  {{"preset", opt.preset}, {"runs", dispatched}},
                  [&](const LoadedInstance& i) {
                    Outcome o = body(i);
                    o.result["preset"] = opt.preset;
                    o.result["runs"] = dispatched;
                    return o;
                  }},
                 out, err);
}

}  // namespace summability::cli
