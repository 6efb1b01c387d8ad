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

#include "upent/instance.h"

#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace upent {
namespace {

template <class Oracle, class Model>
std::shared_ptr<const CapacityOracle> Bind(std::shared_ptr<const Model> model) {
  struct Holder {
    explicit Holder(std::shared_ptr<const Model> m)
        : model(std::move(m)), oracle(*model) {}
    std::shared_ptr<const Model> model;
    Oracle oracle;
  };
  auto holder = std::make_shared<Holder>(std::move(model));
  return std::shared_ptr<const CapacityOracle>(holder, &holder->oracle);
}

}  // namespace

std::string_view InstanceTypeName(InstanceType t) {
  switch (t) {
    case InstanceType::kMass:
      return "mass";
    case InstanceType::kPossibility:
      return "possibility";
    case InstanceType::kIntervals:
      return "intervals";
    case InstanceType::kDistorted:
      return "distorted";
    case InstanceType::kExplicit:
      return "explicit";
  }
  return "?";
}

absl::StatusOr<InstanceType> ParseInstanceType(std::string_view name) {
  for (InstanceType t :
       {InstanceType::kMass, InstanceType::kPossibility, InstanceType::kIntervals,
        InstanceType::kDistorted, InstanceType::kExplicit}) {
    if (InstanceTypeName(t) == name) return t;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown instance type '", std::string(name),
      "' (expected mass, possibility, intervals, distorted or explicit)"));
}

std::shared_ptr<const CapacityOracle> Instance::LowerOracle() const {
  switch (type) {
    case InstanceType::kMass:
      return Bind<BeliefOracle>(mass);
    case InstanceType::kPossibility:
      return Bind<NecessityOracle>(possibility);
    case InstanceType::kIntervals:
      return Bind<IntervalLowerOracle>(intervals);
    case InstanceType::kDistorted:
      return Bind<DistortedOracle>(distorted);
    case InstanceType::kExplicit:
      return explicit_capacity;
  }
  return nullptr;
}

Instance MakeInstance(MassFunction m) {
  Instance inst;
  inst.type = InstanceType::kMass;
  inst.n = m.size();
  inst.mass = std::make_shared<const MassFunction>(std::move(m));
  return inst;
}

Instance MakeInstance(PossibilityDistribution pi) {
  Instance inst;
  inst.type = InstanceType::kPossibility;
  inst.n = pi.size();
  inst.possibility = std::make_shared<const PossibilityDistribution>(std::move(pi));
  return inst;
}

Instance MakeInstance(IntervalSet iv) {
  Instance inst;
  inst.type = InstanceType::kIntervals;
  inst.n = iv.size();
  inst.intervals = std::make_shared<const IntervalSet>(std::move(iv));
  return inst;
}

Instance MakeInstance(DistortedProbability d) {
  Instance inst;
  inst.type = InstanceType::kDistorted;
  inst.n = d.size();
  inst.distorted = std::make_shared<const DistortedProbability>(std::move(d));
  return inst;
}

Instance MakeInstance(ExplicitCapacity mu) {
  Instance inst;
  inst.type = InstanceType::kExplicit;
  inst.n = mu.size();
  inst.explicit_capacity = std::make_shared<const ExplicitCapacity>(std::move(mu));
  return inst;
}

}  // namespace upent
