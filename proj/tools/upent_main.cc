// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: generate, compute, crosscheck, bench, validate.
//
// Exit codes: 0 ok, 1 usage, 2 infeasible or invalid instance, 3 solver
// non-convergence, 4 crosscheck spread exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "upent/belief_flow.h"
#include "upent/capacity.h"
#include "upent/driver.h"
#include "upent/generate.h"
#include "upent/instance_io.h"

namespace {

using upent::Json;

enum Exit { kOk = 0, kUsage = 1, kInfeasible = 2, kNoConvergence = 3, kSpread = 4 };

int Fail(const absl::Status& s, int code) {
  std::cerr << "error: " << s.message() << "\n";
  return code;
}

int SolverExit(const absl::Status& s) {
  if (absl::IsFailedPrecondition(s)) return Fail(s, kInfeasible);
  if (absl::IsInvalidArgument(s)) return Fail(s, kUsage);
  return Fail(s, kNoConvergence);
}

bool WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

struct Globals {
  uint64_t seed = 0;
  std::string log_base = "nats";
  int json_indent = 2;
};

struct GenerateArgs {
  std::string type = "distorted";
  int n = 10;
  double margin = 0.1;
  std::string distortion = "square";
  int focal_sets = 8;
};

absl::StatusOr<upent::Instance> GenerateFrom(const GenerateArgs& g, uint64_t seed) {
  absl::StatusOr<upent::InstanceType> type = upent::ParseInstanceType(g.type);
  if (!type.ok()) return type.status();
  absl::StatusOr<upent::Distortion> f = upent::ParseDistortion(g.distortion);
  if (!f.ok()) return f.status();
  upent::GenerateParams params;
  params.margin = g.margin;
  params.distortion = *f;
  params.focal_sets = g.focal_sets;
  return upent::Generate(*type, g.n, seed, params);
}

void AddGenerateFlags(CLI::App* app, GenerateArgs& g) {
  app->add_option("--type", g.type,
                  "mass, possibility, intervals, distorted or explicit");
  app->add_option("--n", g.n, "Number of outcomes");
  app->add_option("--margin", g.margin, "Intervals: sum l = 1 - margin");
  app->add_option("--f", g.distortion,
                  "Distortion: square, one_minus_sqrt_complement, scaled_exp");
  app->add_option("--focal-sets", g.focal_sets, "Mass: number of focal sets");
}

struct SolverArgs {
  std::string method = "auto";
  int decomp_threshold = 64;
  double epsilon = 1e-12;
  double rel_gap = 1e-3;
  int64_t max_iter = 100000;
  std::optional<double> surrogate_eps;
  bool surrogate_default = false;
  bool fast_start = false;
  std::string sfm = "auto";
};

void AddSolverFlags(CLI::App* app, SolverArgs& s) {
  app->add_option("--method", s.method,
                  "auto, am, decomp, flow, hull, newton, fw or brute");
  app->add_option("--decomp-threshold", s.decomp_threshold,
                  "auto uses decomp up to this n when no specialized solver applies");
  app->add_option("--epsilon", s.epsilon, "Water-level tolerance on |f(x) - 1|");
  app->add_option("--rel-gap", s.rel_gap, "Frank-Wolfe relative bound target");
  app->add_option("--max-iter", s.max_iter, "Frank-Wolfe iteration cap");
  app->add_option("--surrogate-eps", s.surrogate_eps,
                  "Frank-Wolfe surrogate mode with this epsilon");
  app->add_flag("--surrogate", s.surrogate_default,
                "Frank-Wolfe surrogate mode with epsilon 1e-12 / n");
  app->add_flag("--fast-start", s.fast_start,
                "Frank-Wolfe starts from the identity-order vertex (surrogate only)");
  app->add_option("--sfm", s.sfm, "SFM strategy: auto, brute or minnorm");
}

absl::StatusOr<upent::ComputeOptions> ToOptions(const SolverArgs& s, int n) {
  upent::ComputeOptions o;
  if (s.method != "auto") {
    absl::StatusOr<upent::Method> m = upent::ParseMethod(s.method);
    if (!m.ok()) return m.status();
    o.method = *m;
  }
  o.decomp_threshold = s.decomp_threshold;
  o.epsilon = s.epsilon;
  o.fw.rel_gap_tol = s.rel_gap;
  o.fw.max_iter = s.max_iter;
  o.fw.surrogate_epsilon = s.surrogate_eps;
  if (s.surrogate_default && !s.surrogate_eps) {
    o.fw.surrogate_epsilon = upent::DefaultSurrogateEpsilon(n);
  }
  o.fw.fast_start = s.fast_start;
  if (s.sfm == "brute") {
    o.sfm.strategy = upent::SfmStrategy::kBruteForce;
  } else if (s.sfm == "minnorm") {
    o.sfm.strategy = upent::SfmStrategy::kMinNorm;
  } else if (s.sfm != "auto") {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown --sfm '", s.sfm, "' (expected auto, brute or minnorm)"));
  }
  return o;
}

std::vector<std::string> SplitList(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Upper entropy of credal sets of 2-monotone lower probabilities"};
  app.require_subcommand(1);
  Globals globals;
  app.add_option("--seed", globals.seed, "Random seed")->capture_default_str();
  app.add_option("--log-base", globals.log_base, "Entropy unit: nats or bits")
      ->check(CLI::IsMember({"nats", "bits"}));
  app.add_option("--json-indent", globals.json_indent,
                 "JSON indentation; negative for one line");

  // generate
  CLI::App* gen = app.add_subcommand("generate", "Write a random instance");
  GenerateArgs gen_args;
  std::string gen_out;
  AddGenerateFlags(gen, gen_args);
  gen->add_option("-o,--out", gen_out, "Output file (default stdout)");

  // compute
  CLI::App* comp = app.add_subcommand("compute", "Upper entropy of an instance");
  std::string comp_in;
  SolverArgs comp_solver;
  std::string comp_out, trace_out, hull_out, dot_out;
  double dot_alpha = -1.0;
  bool timing = false;
  comp->add_option("instance", comp_in, "Instance JSON file")->required();
  AddSolverFlags(comp, comp_solver);
  comp->add_option("-o,--out", comp_out, "Result file (default stdout)");
  comp->add_option("--trace", trace_out, "Frank-Wolfe per-iteration CSV");
  comp->add_option("--hull-json", hull_out, "Hull breakpoints and vertices as JSON");
  comp->add_option("--dot", dot_out, "Flow network in DOT format (mass instances)");
  comp->add_option("--dot-alpha", dot_alpha, "alpha for --dot (default 1/n)");
  comp->add_flag("--timing", timing, "Include wall-clock times in the result");

  // crosscheck
  CLI::App* cross = app.add_subcommand(
      "crosscheck", "Compare all applicable solvers on one instance");
  std::string cross_in;
  GenerateArgs cross_gen;
  SolverArgs cross_solver;
  double cross_tol = 1e-8;
  cross->add_option("instance", cross_in,
                    "Instance JSON file; omit to generate from --type/--n/--seed");
  AddGenerateFlags(cross, cross_gen);
  cross->add_option("--tol", cross_tol, "Allowed spread");
  cross->add_option("--rel-gap", cross_solver.rel_gap, "Frank-Wolfe relative bound");
  cross->add_option("--max-iter", cross_solver.max_iter, "Frank-Wolfe iteration cap");

  // bench
  CLI::App* bench = app.add_subcommand("bench", "Benchmark grid to CSV");
  std::string b_types = "intervals", b_sizes = "1000", b_methods = "auto";
  std::string b_margins = "0.1", b_fs = "square", b_out;
  int b_seeds = 5, b_workers = 1, b_focal = 8;
  SolverArgs bench_solver;
  bench->add_option("--types", b_types, "Comma-separated instance types");
  bench->add_option("--sizes", b_sizes, "Comma-separated n values");
  bench->add_option("--methods", b_methods, "Comma-separated methods or auto");
  bench->add_option("--margins", b_margins, "Comma-separated interval margins");
  bench->add_option("--fs", b_fs, "Comma-separated distortions");
  bench->add_option("--focal-sets", b_focal, "Mass: number of focal sets");
  bench->add_option("--seeds", b_seeds, "Seeds seed, seed+1, ...");
  bench->add_option("--workers", b_workers, "Worker threads");
  bench->add_option("-o,--out", b_out, "CSV file (default stdout)");
  bench->add_option("--rel-gap", bench_solver.rel_gap, "Frank-Wolfe relative bound");
  bench->add_option("--max-iter", bench_solver.max_iter, "Frank-Wolfe iteration cap");
  bench->add_option("--surrogate-eps", bench_solver.surrogate_eps,
                    "Frank-Wolfe surrogate epsilon");
  bench->add_flag("--surrogate", bench_solver.surrogate_default,
                  "Frank-Wolfe surrogate mode with epsilon 1e-12 / n");
  bench->add_flag("--fast-start", bench_solver.fast_start,
                  "Frank-Wolfe identity-order start");

  // validate
  CLI::App* val = app.add_subcommand("validate", "Check an instance file");
  std::string val_in;
  val->add_option("instance", val_in, "Instance JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  const upent::ResultJsonOptions json_opts{globals.log_base == "bits", timing};

  if (gen->parsed()) {
    absl::StatusOr<upent::Instance> inst = GenerateFrom(gen_args, globals.seed);
    if (!inst.ok()) return Fail(inst.status(), kUsage);
    if (!WriteText(gen_out, upent::DumpJson(upent::InstanceToJson(*inst),
                                            globals.json_indent))) {
      return Fail(absl::UnavailableError("cannot write " + gen_out), kUsage);
    }
    return kOk;
  }

  if (comp->parsed()) {
    absl::StatusOr<upent::Instance> inst = upent::LoadInstance(comp_in);
    if (!inst.ok()) {
      return Fail(inst.status(), absl::IsNotFound(inst.status()) ? kUsage : kInfeasible);
    }
    absl::StatusOr<upent::ComputeOptions> opts = ToOptions(comp_solver, inst->n);
    if (!opts.ok()) return Fail(opts.status(), kUsage);
    if (opts->method && !upent::Applicable(inst->type, *opts->method)) {
      return Fail(absl::InvalidArgumentError(absl::StrCat(
                      "method ", comp_solver.method, " does not apply to ",
                      std::string(upent::InstanceTypeName(inst->type)),
                      " instances\n", upent::ApplicabilityMatrix())),
                  kUsage);
    }
    upent::HullBreakpoints hull;
    upent::FwTrace trace;
    if (!hull_out.empty()) opts->hull_out = &hull;
    if (!trace_out.empty()) opts->fw_trace = &trace;
    if (!dot_out.empty()) {
      if (inst->type != upent::InstanceType::kMass) {
        return Fail(absl::InvalidArgumentError("--dot needs a mass instance"), kUsage);
      }
      const double alpha = dot_alpha > 0.0 ? dot_alpha : 1.0 / inst->n;
      WriteText(dot_out, upent::BuildNetwork(*inst->mass, alpha).ToDot());
    }
    absl::StatusOr<upent::EntropyResult> r = upent::Compute(*inst, *opts);
    if (!r.ok()) return SolverExit(r.status());
    Json j = upent::ResultToJson(*r, json_opts);
    if (!inst->params.empty()) j["instance_params"] = inst->params;
    WriteText(comp_out, upent::DumpJson(j, globals.json_indent));
    if (!trace_out.empty()) {
      std::string csv = "iteration,entropy,gap,gamma\n";
      const double scale = json_opts.bits ? upent::NatsToBits(1.0) : 1.0;
      for (size_t k = 0; k < trace.iterations.size(); ++k) {
        const auto& it = trace.iterations[k];
        absl::StrAppend(&csv, k, ",", it.entropy * scale, ",", it.gap * scale, ",",
                        it.gamma, "\n");
      }
      WriteText(trace_out, csv);
    }
    if (!hull_out.empty() && r->method == upent::Method::kHull) {
      Json h;
      h["breakpoints"] = hull.breakpoints;
      h["suffix_starts"] = hull.suffix_starts;
      Json vertices = Json::array();
      for (const auto& v : hull.hull) {
        vertices.push_back({{"x", v.x}, {"y", v.y}, {"idx", v.idx}});
      }
      h["hull"] = std::move(vertices);
      WriteText(hull_out, upent::DumpJson(h, globals.json_indent));
    }
    return r->converged ? kOk : kNoConvergence;
  }

  if (cross->parsed()) {
    absl::StatusOr<upent::Instance> inst =
        cross_in.empty() ? GenerateFrom(cross_gen, globals.seed)
                         : upent::LoadInstance(cross_in);
    if (!inst.ok()) return Fail(inst.status(), kInfeasible);
    absl::StatusOr<upent::ComputeOptions> opts = ToOptions(cross_solver, inst->n);
    if (!opts.ok()) return Fail(opts.status(), kUsage);
    absl::StatusOr<upent::CrosscheckReport> rep =
        upent::Crosscheck(*inst, cross_tol, *opts);
    if (!rep.ok()) return SolverExit(rep.status());
    const double scale = json_opts.bits ? upent::NatsToBits(1.0) : 1.0;
    Json j;
    Json methods = Json::array();
    for (const auto& r : rep->exact) {
      methods.push_back({{"method", std::string(upent::MethodName(r.method))},
                         {"entropy", r.entropy * scale}});
    }
    j["exact"] = std::move(methods);
    j["fw"] = {{"entropy", rep->frank_wolfe->entropy * scale},
               {"gap", rep->frank_wolfe->gap.value_or(0.0) * scale},
               {"slack", rep->frank_wolfe->slack * scale}};
    j["max_p_difference"] = rep->max_p_difference;
    j["entropy_spread"] = rep->entropy_spread * scale;
    j["fw_bracket_violation"] = rep->fw_bracket_violation * scale;
    j["tolerance"] = cross_tol;
    j["ok"] = rep->within_tolerance;
    if (!rep->notes.empty()) j["notes"] = rep->notes;
    std::cout << upent::DumpJson(j, globals.json_indent);
    return rep->within_tolerance ? kOk : kSpread;
  }

  if (bench->parsed()) {
    upent::BenchSpec spec;
    for (const std::string& t : SplitList(b_types)) {
      absl::StatusOr<upent::InstanceType> type = upent::ParseInstanceType(t);
      if (!type.ok()) return Fail(type.status(), kUsage);
      spec.types.push_back(*type);
    }
    try {
      for (const std::string& s : SplitList(b_sizes)) spec.sizes.push_back(std::stoi(s));
      spec.margins.clear();
      for (const std::string& s : SplitList(b_margins)) spec.margins.push_back(std::stod(s));
    } catch (const std::exception&) {
      return Fail(absl::InvalidArgumentError("bad number in --sizes or --margins"), kUsage);
    }
    spec.distortions.clear();
    for (const std::string& s : SplitList(b_fs)) {
      absl::StatusOr<upent::Distortion> f = upent::ParseDistortion(s);
      if (!f.ok()) return Fail(f.status(), kUsage);
      spec.distortions.push_back(*f);
    }
    for (const std::string& s : SplitList(b_methods)) {
      if (s == "auto") {
        spec.methods.push_back(std::nullopt);
        continue;
      }
      absl::StatusOr<upent::Method> m = upent::ParseMethod(s);
      if (!m.ok()) return Fail(m.status(), kUsage);
      spec.methods.push_back(*m);
    }
    for (int k = 0; k < b_seeds; ++k) spec.seeds.push_back(globals.seed + k);
    spec.focal_sets = b_focal;
    spec.workers = b_workers;
    int max_n = 1;
    for (int n : spec.sizes) max_n = std::max(max_n, n);
    absl::StatusOr<upent::ComputeOptions> opts = ToOptions(bench_solver, max_n);
    if (!opts.ok()) return Fail(opts.status(), kUsage);
    // With --surrogate, eps = 1e-12 / max n keeps n eps <= 1e-12 at every size.
    spec.compute = *opts;
    const std::vector<upent::BenchRecord> records = upent::RunBench(spec);
    const std::string csv = upent::BenchCsv(records);
    const std::string summary = upent::BenchSummary(records);
    for (const upent::BenchRecord& r : records) {
      if (r.error.empty()) continue;
      std::cerr << upent::InstanceTypeName(r.type) << " n=" << r.n << " seed=" << r.seed
                << " " << r.method << ": " << r.error << "\n";
    }
    if (b_out.empty() || b_out == "-") {
      std::cout << csv << "\n" << summary;
    } else {
      if (!WriteText(b_out, csv)) {
        return Fail(absl::UnavailableError("cannot write " + b_out), kUsage);
      }
      std::cout << summary;
    }
    return kOk;
  }

  if (val->parsed()) {
    absl::StatusOr<upent::Instance> inst = upent::LoadInstance(val_in);
    if (!inst.ok()) {
      return Fail(inst.status(), absl::IsNotFound(inst.status()) ? kUsage : kInfeasible);
    }
    Json j;
    j["type"] = std::string(upent::InstanceTypeName(inst->type));
    j["n"] = inst->n;
    if (inst->n <= 12) {
      absl::StatusOr<upent::ExplicitCapacity> table =
          upent::ExplicitCapacity::Materialize(*inst->LowerOracle());
      if (!table.ok()) return Fail(table.status(), kInfeasible);
      absl::StatusOr<bool> two = upent::CheckTwoMonotone(*table);
      if (!two.ok()) return Fail(two.status(), kInfeasible);
      absl::Status lp = upent::ValidateLowerProbability(*table);
      j["two_monotone"] = *two;
      j["lower_probability"] = lp.ok();
      if (!*two || !lp.ok()) {
        std::cout << upent::DumpJson(j, globals.json_indent);
        return kInfeasible;
      }
    } else {
      j["two_monotone"] = "not checked (n > 12)";
    }
    j["valid"] = true;
    std::cout << upent::DumpJson(j, globals.json_indent);
    return kOk;
  }
  return kUsage;
}
