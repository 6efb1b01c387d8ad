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

#include "upent/driver.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <thread>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "upent/belief_flow.h"
#include "upent/exact.h"
#include "upent/intervals.h"

namespace upent {
namespace {

constexpr Method kAllMethods[] = {
    Method::kAbellanMoral, Method::kDecomposition, Method::kMaxFlow,
    Method::kHull,         Method::kNewton,        Method::kFrankWolfe,
    Method::kBruteForceChain};

constexpr InstanceType kAllTypes[] = {
    InstanceType::kMass, InstanceType::kPossibility, InstanceType::kIntervals,
    InstanceType::kDistorted, InstanceType::kExplicit};

std::optional<Method> Specialized(InstanceType type) {
  switch (type) {
    case InstanceType::kMass:
      return Method::kMaxFlow;
    case InstanceType::kPossibility:
      return Method::kHull;
    case InstanceType::kIntervals:
      return Method::kNewton;
    default:
      return std::nullopt;
  }
}

}  // namespace

bool Applicable(InstanceType type, Method method) {
  switch (method) {
    case Method::kMaxFlow:
      return type == InstanceType::kMass;
    case Method::kHull:
      return type == InstanceType::kPossibility;
    case Method::kNewton:
      return type == InstanceType::kIntervals;
    default:
      return true;
  }
}

std::string ApplicabilityMatrix() {
  std::string out = absl::StrFormat("%-12s", "type");
  for (Method m : kAllMethods) {
    absl::StrAppend(&out, absl::StrFormat(" %-6s", std::string(MethodName(m))));
  }
  out += "\n";
  for (InstanceType t : kAllTypes) {
    absl::StrAppend(&out, absl::StrFormat("%-12s", std::string(InstanceTypeName(t))));
    for (Method m : kAllMethods) {
      absl::StrAppend(&out, absl::StrFormat(" %-6s", Applicable(t, m) ? "yes" : "-"));
    }
    out += "\n";
  }
  return out;
}

Method AutoMethod(const Instance& inst, int decomp_threshold) {
  if (std::optional<Method> m = Specialized(inst.type)) return *m;
  return inst.n <= decomp_threshold ? Method::kDecomposition : Method::kFrankWolfe;
}

absl::StatusOr<EntropyResult> Compute(const Instance& inst,
                                      const ComputeOptions& options) {
  const Method method =
      options.method.value_or(AutoMethod(inst, options.decomp_threshold));
  if (!Applicable(inst.type, method)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "method ", std::string(MethodName(method)), " does not apply to ",
        std::string(InstanceTypeName(inst.type)), " instances\n",
        ApplicabilityMatrix()));
  }
  switch (method) {
    case Method::kMaxFlow:
      return BeliefUpperEntropy(*inst.mass);
    case Method::kHull:
      return PossibilityUpperEntropy(*inst.possibility, options.hull_out);
    case Method::kNewton:
      return IntervalsUpperEntropy(*inst.intervals, options.epsilon);
    case Method::kFrankWolfe:
      return FwUpperEntropy(*inst.LowerOracle(), options.fw, options.fw_trace);
    case Method::kBruteForceChain:
      return BruteForceChainOracle(*inst.LowerOracle());
    case Method::kAbellanMoral:
    case Method::kDecomposition:
      return UpperEntropyExact(*inst.LowerOracle(), method, options.sfm);
  }
  return absl::InternalError("unhandled method");
}

absl::StatusOr<CrosscheckReport> Crosscheck(const Instance& inst, double tol,
                                            const ComputeOptions& options) {
  CrosscheckReport report;
  std::vector<Method> methods;
  if (std::optional<Method> m = Specialized(inst.type)) methods.push_back(*m);
  if (inst.n <= options.decomp_threshold) {
    methods.push_back(Method::kAbellanMoral);
    methods.push_back(Method::kDecomposition);
  }
  if (inst.n <= 7) methods.push_back(Method::kBruteForceChain);
  if (methods.size() < 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        "n = ", inst.n, " leaves fewer than two exact methods to compare"));
  }
  ComputeOptions local = options;
  for (Method m : methods) {
    local.method = m;
    absl::StatusOr<EntropyResult> r = Compute(inst, local);
    if (!r.ok()) return r.status();
    report.exact.push_back(*std::move(r));
  }
  for (size_t a = 0; a < report.exact.size(); ++a) {
    for (size_t b = a + 1; b < report.exact.size(); ++b) {
      const auto& pa = report.exact[a].p;
      const auto& pb = report.exact[b].p;
      for (size_t i = 0; i < pa.size(); ++i) {
        report.max_p_difference =
            std::max(report.max_p_difference, std::abs(pa[i] - pb[i]));
      }
      report.entropy_spread =
          std::max(report.entropy_spread,
                   std::abs(report.exact[a].entropy - report.exact[b].entropy));
    }
  }

  local.method = Method::kFrankWolfe;
  absl::StatusOr<EntropyResult> fw = Compute(inst, local);
  if (!fw.ok() && absl::IsFailedPrecondition(fw.status()) &&
      !local.fw.surrogate_epsilon.has_value()) {
    // Some outcome is impossible, so no interior start exists.
    local.fw.surrogate_epsilon = DefaultSurrogateEpsilon(inst.n);
    local.fw.fast_start = true;
    report.notes = "fw ran in surrogate mode from the identity-order vertex";
    fw = Compute(inst, local);
  }
  if (!fw.ok()) return fw.status();
  const double lo = fw->entropy;
  const double hi = fw->entropy + fw->gap.value_or(0.0) + fw->slack;
  for (const EntropyResult& r : report.exact) {
    report.fw_bracket_violation = std::max(
        {report.fw_bracket_violation, lo - r.entropy, r.entropy - hi});
  }
  report.frank_wolfe = *std::move(fw);
  report.within_tolerance = report.max_p_difference <= tol &&
                            report.entropy_spread <= tol &&
                            report.fw_bracket_violation <= tol;
  return report;
}

namespace {

struct BenchCell {
  InstanceType type;
  int n;
  uint64_t seed;
  GenerateParams params;
  std::string params_text;
  std::optional<Method> method;
};

std::vector<BenchCell> ExpandCells(const BenchSpec& spec) {
  std::vector<BenchCell> cells;
  for (InstanceType type : spec.types) {
    for (int n : spec.sizes) {
      std::vector<std::pair<GenerateParams, std::string>> variants;
      GenerateParams base;
      base.focal_sets = spec.focal_sets;
      switch (type) {
        case InstanceType::kIntervals:
          for (double m : spec.margins) {
            GenerateParams p = base;
            p.margin = m;
            variants.emplace_back(p, absl::StrCat("margin=", m));
          }
          break;
        case InstanceType::kDistorted:
        case InstanceType::kExplicit:
          for (Distortion d : spec.distortions) {
            GenerateParams p = base;
            p.distortion = d;
            variants.emplace_back(p, absl::StrCat("f=", std::string(DistortionName(d))));
          }
          break;
        case InstanceType::kMass:
          variants.emplace_back(base, absl::StrCat("k=", spec.focal_sets));
          break;
        case InstanceType::kPossibility:
          variants.emplace_back(base, "");
          break;
      }
      for (const auto& [params, text] : variants) {
        for (const std::optional<Method>& method : spec.methods) {
          if (method.has_value() && !Applicable(type, *method)) continue;
          for (uint64_t seed : spec.seeds) {
            cells.push_back({type, n, seed, params, text, method});
          }
        }
      }
    }
  }
  return cells;
}

BenchRecord RunCell(const BenchCell& cell, const ComputeOptions& base) {
  BenchRecord rec{cell.type, cell.n, cell.seed, cell.params_text, "", 0.0,
                  std::nullopt, 0, 0, 0.0, 0.0, ""};
  const auto start = std::chrono::steady_clock::now();
  absl::StatusOr<Instance> inst = Generate(cell.type, cell.n, cell.seed, cell.params);
  const std::chrono::duration<double> gen = std::chrono::steady_clock::now() - start;
  if (!inst.ok()) {
    rec.method = cell.method ? std::string(MethodName(*cell.method)) : "auto";
    rec.error = std::string(inst.status().message());
    return rec;
  }
  ComputeOptions options = base;
  options.method = cell.method.value_or(AutoMethod(*inst, base.decomp_threshold));
  options.hull_out = nullptr;
  options.fw_trace = nullptr;
  rec.method = std::string(MethodName(*options.method));
  absl::StatusOr<EntropyResult> r = Compute(*inst, options);
  if (!r.ok()) {
    rec.error = std::string(r.status().message());
    rec.setup_s = gen.count();
    return rec;
  }
  rec.entropy = r->entropy;
  rec.gap = r->gap;
  rec.iterations = r->iterations;
  rec.oracle_calls = r->oracle_calls;
  rec.setup_s = gen.count() + r->setup_time.count();
  rec.solve_s = (r->wall_time - r->setup_time).count();
  if (!r->converged) rec.error = "not converged";
  return rec;
}

}  // namespace

std::vector<BenchRecord> RunBench(const BenchSpec& spec) {
  const std::vector<BenchCell> cells = ExpandCells(spec);
  std::vector<std::optional<BenchRecord>> slots(cells.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < cells.size(); i = next++) {
      slots[i] = RunCell(cells[i], spec.compute);
    }
  };
  const int width = std::max(1, spec.workers);
  std::vector<std::thread> pool;
  for (int w = 1; w < width; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  std::vector<BenchRecord> out;
  out.reserve(cells.size());
  for (auto& s : slots) out.push_back(*std::move(s));
  return out;
}

std::string BenchCsv(const std::vector<BenchRecord>& records) {
  std::string out =
      "type,n,seed,params,method,entropy,gap,iterations,oracle_calls,setup_s,"
      "solve_s\n";
  for (const BenchRecord& r : records) {
    absl::StrAppend(&out, std::string(InstanceTypeName(r.type)), ",", r.n, ",",
                    r.seed, ",", r.params, ",", r.method, ",");
    if (r.error.empty() || r.error == "not converged") {
      absl::StrAppend(&out, absl::StrFormat("%.12g", r.entropy));
    } else {
      absl::StrAppend(&out, "error");
    }
    absl::StrAppend(&out, ",", r.gap ? absl::StrFormat("%.6g", *r.gap) : "", ",",
                    r.iterations, ",", r.oracle_calls, ",",
                    absl::StrFormat("%.6f", r.setup_s), ",",
                    absl::StrFormat("%.6f", r.solve_s), "\n");
  }
  return out;
}

std::string BenchSummary(const std::vector<BenchRecord>& records) {
  struct Acc {
    std::vector<double> setup;
    std::vector<double> solve;
    int errors = 0;
  };
  std::map<std::string, Acc> cells;
  std::vector<std::string> order;
  for (const BenchRecord& r : records) {
    const std::string key = absl::StrCat(std::string(InstanceTypeName(r.type)), " n=", r.n,
                                         r.params.empty() ? "" : " ", r.params,
                                         " ", r.method);
    auto [it, inserted] = cells.try_emplace(key);
    if (inserted) order.push_back(key);
    if (!r.error.empty()) ++it->second.errors;
    it->second.setup.push_back(r.setup_s);
    it->second.solve.push_back(r.solve_s);
  }
  auto stats = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= v.size();
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    const double sd = v.size() > 1 ? std::sqrt(var / (v.size() - 1)) : 0.0;
    return absl::StrFormat("%.4f +- %.4f", mean, sd);
  };
  std::string out;
  for (const std::string& key : order) {
    const Acc& a = cells[key];
    absl::StrAppend(&out, key, ": setup ", stats(a.setup), " s, solve ",
                    stats(a.solve), " s over ", a.solve.size(), " seeds");
    if (a.errors > 0) absl::StrAppend(&out, " (", a.errors, " failed)");
    out += "\n";
  }
  return out;
}

}  // namespace upent
