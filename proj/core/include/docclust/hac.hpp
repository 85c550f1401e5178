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

// Single-link agglomerative clustering over cosine similarity.
//
// Clusters are identified by their lowest leaf index. Each step merges the
// pair with the highest single-link similarity; ties go to the
// lexicographically smallest (lower id, higher id) pair. Running to k
// clusters takes leafCount - k merges.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "docclust/sparse_vector.hpp"
#include "docclust/vecspace.hpp"

namespace docclust::buckshot {

struct MergeStep {
  std::uint32_t a = 0;       // dendrogram node of the cluster with the lower leaf id
  std::uint32_t b = 0;       // dendrogram node of the other cluster
  double similarity = 0.0;   // single-link similarity at merge time
  std::uint32_t merged = 0;  // new node id, leafCount + step

  friend bool operator==(const MergeStep&, const MergeStep&) = default;
};

/// Leaves are nodes [0, leafCount); merge i creates node leafCount + i.
struct Dendrogram {
  std::size_t leafCount = 0;
  std::vector<MergeStep> merges;
};

struct HacResult {
  Dendrogram dendrogram;
  std::vector<Label> labels;  // per leaf, numbered by lowest leaf id
};

/// Packed upper-triangular cosine matrix.
class SimilarityMatrix {
 public:
  explicit SimilarityMatrix(std::span<const SparseVector> vectors);

  std::size_t size() const noexcept { return n_; }
  double at(std::size_t i, std::size_t j) const noexcept { return values_[index(i, j)]; }
  double& at(std::size_t i, std::size_t j) noexcept { return values_[index(i, j)]; }

 private:
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    if (j < i) std::swap(i, j);
    return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
  }

  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// Largest sample clustered with one dense matrix (about 144 MB).
inline constexpr std::size_t kMaxDenseHacLeaves = 6000;

/// Clusters `sample` down to k clusters. Throws std::invalid_argument when
/// k is 0, exceeds the sample, or the sample exceeds kMaxDenseHacLeaves.
HacResult hacSingleLink(std::span<const SparseVector> sample, std::size_t k);

/// Labels after the first leafCount - k merges of `dendrogram`.
std::vector<Label> cutDendrogram(const Dendrogram& dendrogram, std::size_t k);

}  // namespace docclust::buckshot
