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

#ifndef UPENT_INSTANCE_IO_H_
#define UPENT_INSTANCE_IO_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "upent/entropy.h"
#include "upent/instance.h"

namespace upent {

using Json = nlohmann::ordered_json;

// Parses one instance object. Errors carry "line N:" of the offending key.
absl::StatusOr<Instance> ParseInstance(std::string_view text);
absl::StatusOr<Instance> LoadInstance(const std::string& path);

Json InstanceToJson(const Instance& inst);

// 1-based element indices.
Json SubsetToJson(const SubsetMask& a);

struct ResultJsonOptions {
  bool bits = false;
  bool timing = false;
};

Json ResultToJson(const EntropyResult& r, const ResultJsonOptions& options = {});

// indent < 0 gives a single line. Always ends with a newline.
std::string DumpJson(const Json& j, int indent);

}  // namespace upent

#endif  // UPENT_INSTANCE_IO_H_
