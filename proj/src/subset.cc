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

#include "upent/subset.h"

#include <bit>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace upent {

SubsetMask::SubsetMask(int n) : n_(n), words_((n + 63) / 64, 0) {}

SubsetMask SubsetMask::Full(int n) {
  SubsetMask s(n);
  for (auto& w : s.words_) w = ~uint64_t{0};
  s.TrimTail();
  return s;
}

SubsetMask SubsetMask::FromElements(int n, std::span<const int> elements) {
  SubsetMask s(n);
  for (int i : elements) s.Insert(i);
  return s;
}

SubsetMask SubsetMask::FromBits(int n, uint64_t word) {
  SubsetMask s(n);
  if (!s.words_.empty()) s.words_[0] = word;
  s.TrimTail();
  return s;
}

void SubsetMask::TrimTail() {
  const int rem = n_ & 63;
  if (rem != 0 && !words_.empty()) {
    words_.back() &= (uint64_t{1} << rem) - 1;
  }
}

int SubsetMask::Count() const {
  int c = 0;
  for (uint64_t w : words_) c += std::popcount(w);
  return c;
}

bool SubsetMask::Empty() const {
  for (uint64_t w : words_) {
    if (w != 0) return false;
  }
  return true;
}

SubsetMask SubsetMask::Union(const SubsetMask& other) const {
  SubsetMask r = *this;
  for (size_t k = 0; k < words_.size(); ++k) r.words_[k] |= other.words_[k];
  return r;
}

SubsetMask SubsetMask::Intersection(const SubsetMask& other) const {
  SubsetMask r = *this;
  for (size_t k = 0; k < words_.size(); ++k) r.words_[k] &= other.words_[k];
  return r;
}

SubsetMask SubsetMask::Minus(const SubsetMask& other) const {
  SubsetMask r = *this;
  for (size_t k = 0; k < words_.size(); ++k) r.words_[k] &= ~other.words_[k];
  return r;
}

SubsetMask SubsetMask::Complement() const {
  SubsetMask r = *this;
  for (auto& w : r.words_) w = ~w;
  r.TrimTail();
  return r;
}

bool SubsetMask::IsSubsetOf(const SubsetMask& other) const {
  for (size_t k = 0; k < words_.size(); ++k) {
    if (words_[k] & ~other.words_[k]) return false;
  }
  return true;
}

bool SubsetMask::Intersects(const SubsetMask& other) const {
  for (size_t k = 0; k < words_.size(); ++k) {
    if (words_[k] & other.words_[k]) return true;
  }
  return false;
}

std::vector<int> SubsetMask::Elements() const {
  std::vector<int> out;
  for (size_t k = 0; k < words_.size(); ++k) {
    uint64_t w = words_[k];
    while (w != 0) {
      out.push_back(static_cast<int>(k * 64) + std::countr_zero(w));
      w &= w - 1;
    }
  }
  return out;
}

std::string SubsetMask::ToString() const {
  std::vector<int> labels = Elements();
  for (int& i : labels) ++i;
  return absl::StrCat("{", absl::StrJoin(labels, ","), "}");
}

}  // namespace upent
