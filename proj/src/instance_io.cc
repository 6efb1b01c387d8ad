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

#include "upent/instance_io.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "upent/models.h"

namespace upent {
namespace {

int LineAt(std::string_view text, size_t pos) {
  pos = std::min(pos, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + pos, '\n'));
}

int LineOfKey(std::string_view text, std::string_view key) {
  const std::string quoted = absl::StrCat("\"", std::string(key), "\"");
  const size_t pos = text.find(quoted);
  return pos == std::string_view::npos ? 1 : LineAt(text, pos);
}

absl::Status AtLine(const absl::Status& s, std::string_view text,
                    std::string_view key) {
  return absl::Status(s.code(), absl::StrCat("line ", LineOfKey(text, key), ": ",
                                             std::string(s.message())));
}

absl::Status Invalid(std::string_view text, std::string_view key,
                     std::string_view message) {
  return AtLine(absl::InvalidArgumentError(std::string(message)), text, key);
}

absl::StatusOr<std::vector<double>> Numbers(const Json& j, std::string_view text,
                                            const char* key) {
  if (!j.contains(key)) return Invalid(text, "type", absl::StrCat("missing \"", key, "\""));
  const Json& a = j.at(key);
  if (!a.is_array()) return Invalid(text, key, absl::StrCat("\"", key, "\" must be an array"));
  std::vector<double> out;
  out.reserve(a.size());
  for (const Json& v : a) {
    if (!v.is_number()) {
      return Invalid(text, key, absl::StrCat("\"", key, "\" holds a non-number"));
    }
    out.push_back(v.get<double>());
  }
  return out;
}

absl::StatusOr<SubsetMask> ParseSubset(const Json& a, int n, std::string_view text,
                                       const char* key) {
  if (!a.is_array()) return Invalid(text, key, "subset must be an array of indices");
  SubsetMask s(n);
  for (const Json& v : a) {
    if (!v.is_number_integer()) return Invalid(text, key, "subset index must be an integer");
    const int64_t i = v.get<int64_t>();
    if (i < 1 || i > n) {
      return Invalid(text, key, absl::StrCat("element ", i, " outside 1..", n));
    }
    if (s.Contains(static_cast<int>(i - 1))) {
      return Invalid(text, key, absl::StrCat("element ", i, " repeated in a subset"));
    }
    s.Insert(static_cast<int>(i - 1));
  }
  return s;
}

absl::StatusOr<uint64_t> ParseSubsetKey(std::string_view key, int n) {
  uint64_t bits = 0;
  if (key.empty()) return bits;
  for (absl::string_view part : absl::StrSplit(absl::string_view(key.data(), key.size()), ',')) {
    int i = 0;
    if (!absl::SimpleAtoi(part, &i) || i < 1 || i > n) {
      return absl::InvalidArgumentError(absl::StrCat(
          "bad subset key \"", std::string(key), "\" (expected comma-joined indices in 1..", n, ")"));
    }
    const uint64_t bit = uint64_t{1} << (i - 1);
    if (bits & bit) {
      return absl::InvalidArgumentError(
          absl::StrCat("subset key \"", std::string(key), "\" repeats an element"));
    }
    bits |= bit;
  }
  return bits;
}

template <class T>
absl::StatusOr<T> Located(absl::StatusOr<T> v, std::string_view text,
                          std::string_view key) {
  if (!v.ok()) return AtLine(v.status(), text, key);
  return v;
}

absl::StatusOr<Instance> FromJson(const Json& j, std::string_view text) {
  if (!j.is_object()) return Invalid(text, "", "instance must be a JSON object");
  if (!j.contains("type") || !j.at("type").is_string()) {
    return Invalid(text, "type", "missing string field \"type\"");
  }
  absl::StatusOr<InstanceType> type = ParseInstanceType(j.at("type").get<std::string>());
  if (!type.ok()) return AtLine(type.status(), text, "type");
  if (!j.contains("n") || !j.at("n").is_number_integer() || j.at("n").get<int64_t>() < 1) {
    return Invalid(text, "n", "\"n\" must be a positive integer");
  }
  const int n = j.at("n").get<int>();
  auto check_length = [&](const std::vector<double>& v, const char* key) {
    if (static_cast<int>(v.size()) == n) return absl::OkStatus();
    return Invalid(text, key, absl::StrCat("\"", key, "\" has ", v.size(),
                                           " entries, expected n = ", n));
  };

  Instance inst;
  switch (*type) {
    case InstanceType::kMass: {
      if (!j.contains("focal_sets") || !j.at("focal_sets").is_array()) {
        return Invalid(text, "type", "missing array \"focal_sets\"");
      }
      std::vector<SubsetMask> sets;
      for (const Json& a : j.at("focal_sets")) {
        absl::StatusOr<SubsetMask> s = ParseSubset(a, n, text, "focal_sets");
        if (!s.ok()) return s.status();
        sets.push_back(*std::move(s));
      }
      absl::StatusOr<std::vector<double>> masses = Numbers(j, text, "masses");
      if (!masses.ok()) return masses.status();
      if (masses->size() != sets.size()) {
        return Invalid(text, "masses", "\"masses\" and \"focal_sets\" differ in length");
      }
      absl::StatusOr<MassFunction> m = Located(
          MassFunction::Create(n, std::move(sets), *std::move(masses)), text, "masses");
      if (!m.ok()) return m.status();
      inst = MakeInstance(*std::move(m));
      break;
    }
    case InstanceType::kPossibility: {
      absl::StatusOr<std::vector<double>> pi = Numbers(j, text, "pi");
      if (!pi.ok()) return pi.status();
      if (absl::Status s = check_length(*pi, "pi"); !s.ok()) return s;
      const bool renormalize = j.value("renormalize", false);
      absl::StatusOr<PossibilityDistribution> d = Located(
          PossibilityDistribution::Create(*std::move(pi), renormalize), text, "pi");
      if (!d.ok()) return d.status();
      inst = MakeInstance(*std::move(d));
      break;
    }
    case InstanceType::kIntervals: {
      absl::StatusOr<std::vector<double>> l = Numbers(j, text, "l");
      if (!l.ok()) return l.status();
      absl::StatusOr<std::vector<double>> u = Numbers(j, text, "u");
      if (!u.ok()) return u.status();
      if (absl::Status s = check_length(*l, "l"); !s.ok()) return s;
      if (absl::Status s = check_length(*u, "u"); !s.ok()) return s;
      absl::StatusOr<IntervalSet> iv =
          Located(IntervalSet::Create(*std::move(l), *std::move(u)), text, "l");
      if (!iv.ok()) return iv.status();
      inst = MakeInstance(*std::move(iv));
      break;
    }
    case InstanceType::kDistorted: {
      absl::StatusOr<std::vector<double>> p = Numbers(j, text, "p_star");
      if (!p.ok()) return p.status();
      if (absl::Status s = check_length(*p, "p_star"); !s.ok()) return s;
      if (!j.contains("f") || !j.at("f").is_string()) {
        return Invalid(text, "type", "missing string field \"f\"");
      }
      absl::StatusOr<Distortion> f =
          Located(ParseDistortion(j.at("f").get<std::string>()), text, "f");
      if (!f.ok()) return f.status();
      absl::StatusOr<DistortedProbability> d =
          Located(DistortedProbability::Create(*std::move(p), *f), text, "p_star");
      if (!d.ok()) return d.status();
      inst = MakeInstance(*std::move(d));
      break;
    }
    case InstanceType::kExplicit: {
      if (n > ExplicitCapacity::kMaxSize) {
        return Invalid(text, "n", "explicit instances need n <= 20");
      }
      if (!j.contains("values") || !j.at("values").is_object()) {
        return Invalid(text, "type", "missing object \"values\"");
      }
      const uint64_t count = uint64_t{1} << n;
      std::vector<double> values(count, 0.0);
      std::vector<char> given(count, 0);
      for (const auto& [key, v] : j.at("values").items()) {
        absl::StatusOr<uint64_t> bits = ParseSubsetKey(key, n);
        if (!bits.ok()) return AtLine(bits.status(), text, key);
        if (!v.is_number()) return Invalid(text, key, "subset value must be a number");
        values[*bits] = v.get<double>();
        given[*bits] = 1;
      }
      if (!given[count - 1]) {
        values[count - 1] = 1.0;
        given[count - 1] = 1;
      }
      given[0] = 1;
      for (uint64_t bits = 1; bits < count; ++bits) {
        if (!given[bits]) {
          return Invalid(text, "values",
                         absl::StrCat("no value for subset ",
                                      SubsetMask::FromBits(n, bits).ToString()));
        }
      }
      absl::StatusOr<ExplicitCapacity> mu =
          Located(ExplicitCapacity::Create(n, std::move(values)), text, "values");
      if (!mu.ok()) return mu.status();
      if (absl::Status s = ValidateLowerProbability(*mu); !s.ok()) {
        return AtLine(s, text, "values");
      }
      if (n <= 12) {
        absl::StatusOr<bool> two = CheckTwoMonotone(*mu);
        if (!two.ok()) return AtLine(two.status(), text, "values");
        if (!*two) return Invalid(text, "values", "capacity is not 2-monotone");
      }
      inst = MakeInstance(*std::move(mu));
      break;
    }
  }
  if (j.contains("params")) inst.params = j.at("params");
  return inst;
}

}  // namespace

absl::StatusOr<Instance> ParseInstance(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("line ", LineAt(text, e.byte == 0 ? 0 : e.byte - 1),
                     ": malformed JSON: ", e.what()));
  }
  return FromJson(j, text);
}

absl::StatusOr<Instance> LoadInstance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  absl::StatusOr<Instance> inst = ParseInstance(buffer.str());
  if (!inst.ok()) {
    return absl::Status(inst.status().code(),
                        absl::StrCat(path, ":", std::string(inst.status().message())));
  }
  return inst;
}

Json SubsetToJson(const SubsetMask& a) {
  Json out = Json::array();
  for (int i : a.Elements()) out.push_back(i + 1);
  return out;
}

Json InstanceToJson(const Instance& inst) {
  Json j;
  j["type"] = std::string(InstanceTypeName(inst.type));
  j["n"] = inst.n;
  switch (inst.type) {
    case InstanceType::kMass: {
      Json sets = Json::array();
      for (const SubsetMask& a : inst.mass->focal_sets()) sets.push_back(SubsetToJson(a));
      j["focal_sets"] = std::move(sets);
      j["masses"] = inst.mass->masses();
      break;
    }
    case InstanceType::kPossibility:
      j["pi"] = inst.possibility->pi();
      break;
    case InstanceType::kIntervals:
      j["l"] = inst.intervals->lower();
      j["u"] = inst.intervals->upper();
      break;
    case InstanceType::kDistorted:
      j["f"] = std::string(DistortionName(inst.distorted->distortion()));
      j["p_star"] = inst.distorted->p_star();
      break;
    case InstanceType::kExplicit: {
      Json values = Json::object();
      const uint64_t count = uint64_t{1} << inst.n;
      for (uint64_t bits = 1; bits < count; ++bits) {
        std::string key;
        for (int i : SubsetMask::FromBits(inst.n, bits).Elements()) {
          absl::StrAppend(&key, key.empty() ? "" : ",", i + 1);
        }
        values[key] = inst.explicit_capacity->at(bits);
      }
      j["values"] = std::move(values);
      break;
    }
  }
  if (!inst.params.empty()) j["params"] = inst.params;
  return j;
}

Json ResultToJson(const EntropyResult& r, const ResultJsonOptions& options) {
  const double scale = options.bits ? 1.0 / 0.69314718055994530942 : 1.0;
  Json j;
  j["method"] = std::string(MethodName(r.method));
  j["n"] = r.p.size();
  j["log_base"] = options.bits ? "bits" : "nats";
  j["entropy"] = r.entropy * scale;
  if (r.gap.has_value()) {
    j["gap"] = *r.gap * scale;
    j["slack"] = r.slack * scale;
  }
  j["p"] = r.p;
  if (r.chain.has_value()) {
    Json sets = Json::array();
    for (const SubsetMask& a : r.chain->sets) sets.push_back(SubsetToJson(a));
    j["chain"] = {{"sets", std::move(sets)}, {"breakpoints", r.chain->breakpoints}};
  }
  j["probes"] = r.probes;
  j["iterations"] = r.iterations;
  j["sfm_calls"] = r.sfm_calls;
  j["oracle_calls"] = r.oracle_calls;
  j["converged"] = r.converged;
  if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
  if (options.timing) {
    j["timing"] = {{"setup_s", r.setup_time.count()},
                   {"solve_s", (r.wall_time - r.setup_time).count()}};
  }
  return j;
}

std::string DumpJson(const Json& j, int indent) {
  return j.dump(indent < 0 ? -1 : indent) + "\n";
}

}  // namespace upent
