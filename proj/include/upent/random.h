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

#ifndef UPENT_RANDOM_H_
#define UPENT_RANDOM_H_

#include <cstdint>
#include <span>
#include <vector>

namespace upent {

// xoshiro256** seeded through splitmix64. Output depends only on the
// seed, so instances reproduce across platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t Next();
  // [0, 1) with 53 random bits.
  double Uniform();
  // (0, 1].
  double UniformPositive() { return 1.0 - Uniform(); }
  // Standard exponential.
  double Exponential();
  // Uniform on 0..bound-1; bound > 0.
  uint64_t Below(uint64_t bound);
  // Dirichlet(1, ..., 1) as normalized exponentials.
  std::vector<double> FlatDirichlet(int k);

 private:
  uint64_t s_[4];
};

uint64_t SplitMix64(uint64_t& state);

}  // namespace upent

#endif  // UPENT_RANDOM_H_
