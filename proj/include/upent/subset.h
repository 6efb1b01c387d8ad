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

#ifndef UPENT_SUBSET_H_
#define UPENT_SUBSET_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/container/inlined_vector.h"

namespace upent {

// A subset of the ground set {0, ..., n-1}, stored as a bit set. Elements are
// 0-based in code; files and user-facing strings use 1-based labels.
class SubsetMask {
 public:
  SubsetMask() = default;
  explicit SubsetMask(int n);

  static SubsetMask Full(int n);
  static SubsetMask FromElements(int n, std::span<const int> elements);
  // Bits of `word` are elements 0..63; requires n <= 64.
  static SubsetMask FromBits(int n, uint64_t word);

  int universe_size() const { return n_; }

  bool Contains(int i) const {
    return (words_[i >> 6] >> (i & 63)) & uint64_t{1};
  }
  void Insert(int i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
  void Erase(int i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }

  int Count() const;
  bool Empty() const;
  bool IsFull() const { return Count() == n_; }

  SubsetMask Union(const SubsetMask& other) const;
  SubsetMask Intersection(const SubsetMask& other) const;
  SubsetMask Minus(const SubsetMask& other) const;
  SubsetMask Complement() const;
  bool IsSubsetOf(const SubsetMask& other) const;
  bool Intersects(const SubsetMask& other) const;

  // Low 64 bits; the whole set when n <= 64.
  uint64_t word0() const { return words_.empty() ? 0 : words_[0]; }

  std::vector<int> Elements() const;
  // 1-based labels, e.g. "{1,3}".
  std::string ToString() const;

  friend bool operator==(const SubsetMask& a, const SubsetMask& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

 private:
  void TrimTail();

  int n_ = 0;
  absl::InlinedVector<uint64_t, 1> words_;
};

}  // namespace upent

#endif  // UPENT_SUBSET_H_
