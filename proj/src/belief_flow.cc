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

#include "upent/belief_flow.h"

#include <algorithm>
#include <chrono>
#include <deque>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "upent/exact.h"

namespace upent {

FlowNetwork::FlowNetwork(int elements, int focal_sets, double alpha)
    : elements_(elements),
      focal_sets_(focal_sets),
      alpha_(alpha),
      cap_inf_(elements * alpha + 2.0),
      adjacency_(2 + elements + focal_sets) {}

void FlowNetwork::AddArc(int from, int to, double capacity) {
  adjacency_[from].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({from, to, capacity, capacity});
  adjacency_[to].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({to, from, 0.0, 0.0});
}

std::string FlowNetwork::ToDot() const {
  std::string out = "digraph flow {\n  rankdir=LR;\n";
  auto name = [&](int v) -> std::string {
    if (v == source()) return "s";
    if (v == sink()) return "t";
    if (v < 2 + elements_) return absl::StrCat("e", v - 1);
    return absl::StrCat("F", v - 1 - elements_);
  };
  for (size_t e = 0; e < arcs_.size(); e += 2) {
    const Arc& a = arcs_[e];
    const std::string label =
        a.capacity >= cap_inf_ ? "inf" : absl::StrCat(a.capacity);
    absl::StrAppend(&out, "  ", name(a.from), " -> ", name(a.to),
                    " [label=\"", label, "\"];\n");
  }
  out += "}\n";
  return out;
}

FlowNetwork BuildNetwork(const MassFunction& m, double alpha) {
  const int n = m.size();
  const int k = static_cast<int>(m.focal_sets().size());
  FlowNetwork net(n, k, alpha);
  for (int j = 0; j < n; ++j) net.AddArc(net.source(), net.element_node(j), alpha);
  for (int j = 0; j < n; ++j) {
    for (int f : m.focal_sets_of(j)) {
      net.AddArc(net.element_node(j), net.focal_node(f), net.cap_inf());
    }
  }
  for (int f = 0; f < k; ++f) {
    net.AddArc(net.focal_node(f), net.sink(), m.masses()[f]);
  }
  return net;
}

namespace {

class Dinic {
 public:
  Dinic(FlowNetwork& net, double eps)
      : net_(net), eps_(eps), level_(net.node_count()), next_(net.node_count()) {}

  double Run() {
    double total = 0.0;
    while (BuildLevels()) {
      std::fill(next_.begin(), next_.end(), 0);
      while (true) {
        const double pushed = Augment(net_.source(),
                                      std::numeric_limits<double>::infinity());
        if (pushed <= eps_) break;
        total += pushed;
      }
    }
    return total;
  }

 private:
  bool BuildLevels() {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<int> queue = {net_.source()};
    level_[net_.source()] = 0;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int e : net_.out_arcs(v)) {
        const auto& a = net_.arcs()[e];
        if (a.residual > eps_ && level_[a.to] < 0) {
          level_[a.to] = level_[v] + 1;
          queue.push_back(a.to);
        }
      }
    }
    return level_[net_.sink()] >= 0;
  }

  double Augment(int v, double limit) {
    if (v == net_.sink()) return limit;
    auto& arcs = net_.mutable_arcs();
    const auto& out = net_.out_arcs(v);
    for (int& idx = next_[v]; idx < static_cast<int>(out.size()); ++idx) {
      const int e = out[idx];
      FlowNetwork::Arc& a = arcs[e];
      if (a.residual <= eps_ || level_[a.to] != level_[v] + 1) continue;
      const double pushed = Augment(a.to, std::min(limit, a.residual));
      if (pushed > eps_) {
        a.residual -= pushed;
        arcs[e ^ 1].residual += pushed;
        return pushed;
      }
    }
    return 0.0;
  }

  FlowNetwork& net_;
  double eps_;
  std::vector<int> level_;
  std::vector<int> next_;
};

}  // namespace

double MaxFlow(FlowNetwork& net, double eps) { return Dinic(net, eps).Run(); }

CutResult MaximalMinCut(FlowNetwork& net, double eps) {
  CutResult cut;
  cut.flow_value = MaxFlow(net, eps);
  // Reverse search from the sink: u reaches t when some arc u -> v with
  // positive residual leads to a node that reaches t.
  const int nodes = net.node_count();
  std::vector<std::vector<int>> incoming(nodes);
  const auto& arcs = net.arcs();
  for (size_t e = 0; e < arcs.size(); ++e) {
    if (arcs[e].residual > eps) incoming[arcs[e].to].push_back(arcs[e].from);
  }
  std::vector<char> reaches_sink(nodes, 0);
  std::vector<int> stack = {net.sink()};
  reaches_sink[net.sink()] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : incoming[v]) {
      if (!reaches_sink[u]) {
        reaches_sink[u] = 1;
        stack.push_back(u);
      }
    }
  }
  cut.source_side_elements = SubsetMask(net.elements());
  for (int j = 0; j < net.elements(); ++j) {
    if (!reaches_sink[net.element_node(j)]) cut.source_side_elements.Insert(j);
  }
  cut.source_side_focal.assign(net.focal_sets(), 0);
  for (int f = 0; f < net.focal_sets(); ++f) {
    cut.source_side_focal[f] = !reaches_sink[net.focal_node(f)];
  }
  for (size_t e = 0; e < arcs.size(); e += 2) {
    if (!reaches_sink[arcs[e].from] && reaches_sink[arcs[e].to]) {
      cut.cut_value += arcs[e].capacity;
    }
  }
  return cut;
}

absl::StatusOr<SfmResult> MinPlausDensity(const MassFunction& m, double alpha) {
  if (!(alpha > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("min-cut formulation needs alpha > 0, got ", alpha));
  }
  FlowNetwork net = BuildNetwork(m, alpha);
  CutResult cut = MaximalMinCut(net);
  SfmResult r;
  r.min_value = cut.cut_value - m.size() * alpha;
  r.maximal_minimizer = cut.source_side_elements;
  // The minimal minimizer is the forward-reachable side.
  SubsetMask reach(m.size());
  std::vector<char> seen(net.node_count(), 0);
  std::vector<int> stack = {net.source()};
  seen[net.source()] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int e : net.out_arcs(v)) {
      const auto& a = net.arcs()[e];
      if (a.residual > 1e-12 && !seen[a.to]) {
        seen[a.to] = 1;
        stack.push_back(a.to);
      }
    }
  }
  for (int j = 0; j < m.size(); ++j) {
    if (seen[net.element_node(j)]) reach.Insert(j);
  }
  r.minimal_minimizer = reach.Intersection(r.maximal_minimizer);
  return r;
}

absl::StatusOr<EntropyResult> BeliefUpperEntropy(const MassFunction& m) {
  const auto start = std::chrono::steady_clock::now();
  PlausibilityOracle pl(m);
  MaximalMinimizerFn cut = [&](double alpha, const SubsetMask&,
                               const SubsetMask& hi) -> absl::StatusOr<SubsetMask> {
    // Pl(lo) = Pl(hi) at alpha = 0, so hi is already maximal.
    if (alpha <= 0.0) return hi;
    absl::StatusOr<SfmResult> r = MinPlausDensity(m, alpha);
    if (!r.ok()) return r.status();
    return r->maximal_minimizer;
  };
  absl::StatusOr<DecompositionResult> dec = DecompositionChainWith(pl, {}, cut);
  if (!dec.ok()) return dec.status();
  EntropyResult result;
  result.method = Method::kMaxFlow;
  result.p = ChainToDistribution(dec->chain, pl);
  for (double& x : result.p) x = std::max(x, 0.0);
  result.entropy = Entropy(result.p);
  result.probes = std::move(dec->probes);
  result.sfm_calls = dec->sfm_calls;
  result.iterations = dec->sfm_calls;
  result.diagnostics = std::move(dec->diagnostics);
  result.chain = std::move(dec->chain);
  result.wall_time = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace upent
