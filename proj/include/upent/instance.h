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

#ifndef UPENT_INSTANCE_H_
#define UPENT_INSTANCE_H_

#include <memory>
#include <string_view>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "upent/capacity.h"
#include "upent/models.h"

namespace upent {

enum class InstanceType { kMass, kPossibility, kIntervals, kDistorted, kExplicit };

std::string_view InstanceTypeName(InstanceType t);
absl::StatusOr<InstanceType> ParseInstanceType(std::string_view name);

// A lower probability in one of the supported representations. Exactly the
// member matching `type` is set. Copies share the underlying model.
struct Instance {
  InstanceType type = InstanceType::kExplicit;
  int n = 0;
  std::shared_ptr<const MassFunction> mass;
  std::shared_ptr<const PossibilityDistribution> possibility;
  std::shared_ptr<const IntervalSet> intervals;
  std::shared_ptr<const DistortedProbability> distorted;
  std::shared_ptr<const ExplicitCapacity> explicit_capacity;
  // Generator metadata, echoed into files and results.
  nlohmann::ordered_json params = nlohmann::ordered_json::object();

  // The lower probability mu as an oracle; keeps the model alive.
  std::shared_ptr<const CapacityOracle> LowerOracle() const;
};

Instance MakeInstance(MassFunction m);
Instance MakeInstance(PossibilityDistribution pi);
Instance MakeInstance(IntervalSet iv);
Instance MakeInstance(DistortedProbability d);
Instance MakeInstance(ExplicitCapacity mu);

}  // namespace upent

#endif  // UPENT_INSTANCE_H_
