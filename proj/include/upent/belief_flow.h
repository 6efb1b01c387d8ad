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

#ifndef UPENT_BELIEF_FLOW_H_
#define UPENT_BELIEF_FLOW_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "upent/entropy.h"
#include "upent/models.h"
#include "upent/sfm.h"

namespace upent {

// Bipartite network for min_A Pl(A) - alpha |A|: source -> element (alpha),
// element -> focal set containing it (cap_inf), focal set -> sink (mass).
// Arcs are stored in residual pairs: arc e and its reverse e ^ 1.
class FlowNetwork {
 public:
  struct Arc {
    int from;
    int to;
    double capacity;
    double residual;
  };

  FlowNetwork(int elements, int focal_sets, double alpha);

  int source() const { return 0; }
  int sink() const { return 1; }
  int element_node(int j) const { return 2 + j; }
  int focal_node(int k) const { return 2 + elements_ + k; }
  int node_count() const { return 2 + elements_ + focal_sets_; }
  int elements() const { return elements_; }
  int focal_sets() const { return focal_sets_; }
  double alpha() const { return alpha_; }
  double cap_inf() const { return cap_inf_; }

  void AddArc(int from, int to, double capacity);

  const std::vector<Arc>& arcs() const { return arcs_; }
  std::vector<Arc>& mutable_arcs() { return arcs_; }
  const std::vector<int>& out_arcs(int node) const { return adjacency_[node]; }
  // Forward arcs only (even indices).
  int forward_arc_count() const { return static_cast<int>(arcs_.size() / 2); }

  std::string ToDot() const;

 private:
  int elements_;
  int focal_sets_;
  double alpha_;
  double cap_inf_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adjacency_;
};

FlowNetwork BuildNetwork(const MassFunction& m, double alpha);

// Dinic's algorithm; leaves the residual capacities in `net`. Residuals at or
// below `eps` count as saturated.
double MaxFlow(FlowNetwork& net, double eps = 1e-12);

struct CutResult {
  double cut_value = 0.0;
  double flow_value = 0.0;
  // Elements on the source side of the maximal minimum cut.
  SubsetMask source_side_elements;
  std::vector<char> source_side_focal;
};

// Runs MaxFlow, then takes as source side every node that cannot reach the
// sink in the residual graph: the union of all minimum-cut source sides.
CutResult MaximalMinCut(FlowNetwork& net, double eps = 1e-12);

// min_A Pl(A) - alpha |A| and its maximal minimizer, via one min cut.
absl::StatusOr<SfmResult> MinPlausDensity(const MassFunction& m, double alpha);

// Decomposition chain of Pl with every SFM replaced by MinPlausDensity.
absl::StatusOr<EntropyResult> BeliefUpperEntropy(const MassFunction& m);

}  // namespace upent

#endif  // UPENT_BELIEF_FLOW_H_
