// Copyright 2026 The docclust Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace docclust {

/// Disjoint sets with path halving and union by size. unite() keeps the
/// smaller root index as representative when sizes tie, so results do not
/// depend on argument order.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  std::uint32_t find(std::uint32_t x) noexcept {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::uint32_t a, std::uint32_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b] || (size_[a] == size_[b] && b < a)) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  std::size_t size() const noexcept { return parent_.size(); }

  /// Dense component ids in order of each component's lowest element.
  std::vector<std::uint32_t> components(std::size_t* count = nullptr) {
    std::vector<std::uint32_t> id(parent_.size());
    std::vector<std::int64_t> rootId(parent_.size(), -1);
    std::uint32_t next = 0;
    for (std::uint32_t x = 0; x < parent_.size(); ++x) {
      const auto r = find(x);
      if (rootId[r] < 0) rootId[r] = next++;
      id[x] = static_cast<std::uint32_t>(rootId[r]);
    }
    if (count) *count = next;
    return id;
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

}  // namespace docclust
