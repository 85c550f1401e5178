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

#include "docclust/hac.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "docclust/union_find.hpp"

namespace docclust::buckshot {

SimilarityMatrix::SimilarityMatrix(std::span<const SparseVector> vectors) : n_(vectors.size()) {
  values_.resize(n_ > 1 ? n_ * (n_ - 1) / 2 : 0);
  const std::size_t dims = dimensionCount(vectors);
  std::vector<double> row(dims, 0.0);
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    for (const auto& t : vectors[i].terms) row[t.dim] = t.weight;
    for (std::size_t j = i + 1; j < n_; ++j) {
      // Same term order and products as cosine(), so the values are identical.
      double s = 0.0;
      for (const auto& t : vectors[j].terms) s += row[t.dim] * t.weight;
      values_[index(i, j)] = s;
    }
    for (const auto& t : vectors[i].terms) row[t.dim] = 0.0;
  }
}

namespace {

std::vector<Label> labelsFromSets(DisjointSets& sets) { return sets.components(); }

}  // namespace

HacResult hacSingleLink(std::span<const SparseVector> sample, std::size_t k) {
  const std::size_t n = sample.size();
  if (k < 1 || k > n) {
    throw std::invalid_argument("single-link needs 1 <= k <= sample size (k=" + std::to_string(k) +
                                ", sample=" + std::to_string(n) + ")");
  }
  if (n > kMaxDenseHacLeaves) {
    throw std::invalid_argument("sample of " + std::to_string(n) +
                                " documents exceeds the dense similarity-matrix limit of " +
                                std::to_string(kMaxDenseHacLeaves) + "; use more partitions");
  }

  HacResult result;
  result.dendrogram.leafCount = n;
  SimilarityMatrix sim(sample);

  // best[i]: lowest active j != i with the row maximum.
  std::vector<bool> active(n, true);
  std::vector<std::uint32_t> node(n);
  std::vector<std::uint32_t> best(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) node[i] = i;

  auto recomputeBest = [&](std::uint32_t i) {
    bool found = false;
    double value = 0.0;
    for (std::uint32_t j = 0; j < n; ++j) {
      if (j == i || !active[j]) continue;
      const double s = sim.at(i, j);
      if (!found || s > value) {
        found = true;
        value = s;
        best[i] = j;
      }
    }
  };
  if (n > 1) {
    for (std::uint32_t i = 0; i < n; ++i) recomputeBest(i);
  }

  DisjointSets sets(n);
  const std::size_t merges = n - k;
  result.dendrogram.merges.reserve(merges);
  for (std::size_t step = 0; step < merges; ++step) {
    // Lowest row whose maximum is the global maximum; its best partner is
    // then the lexicographically smallest maximal pair, with a < b.
    std::uint32_t a = 0;
    bool found = false;
    double top = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      const double s = sim.at(i, best[i]);
      if (!found || s > top) {
        found = true;
        top = s;
        a = i;
      }
    }
    const std::uint32_t b = best[a];

    const auto merged = static_cast<std::uint32_t>(n + step);
    result.dendrogram.merges.push_back(MergeStep{node[a], node[b], top, merged});
    node[a] = merged;
    active[b] = false;
    sets.unite(a, b);

    for (std::uint32_t x = 0; x < n; ++x) {
      if (!active[x] || x == a) continue;
      const double updated = std::max(sim.at(a, x), sim.at(b, x));
      sim.at(a, x) = updated;
      const std::uint32_t bx = best[x];
      if (bx == a || bx == b) {
        best[x] = a;
      } else if (updated > sim.at(x, bx) || (updated == sim.at(x, bx) && a < bx)) {
        best[x] = a;
      }
    }
    recomputeBest(a);
  }

  result.labels = labelsFromSets(sets);
  return result;
}

std::vector<Label> cutDendrogram(const Dendrogram& dendrogram, std::size_t k) {
  const std::size_t n = dendrogram.leafCount;
  if (k < 1 || k > n) throw std::invalid_argument("cut needs 1 <= k <= leafCount");
  const std::size_t merges = n - k;
  if (merges > dendrogram.merges.size()) {
    throw std::invalid_argument("dendrogram has too few merges for k=" + std::to_string(k));
  }
  // Any leaf under a node identifies its cluster.
  std::vector<std::uint32_t> leafOf(n + dendrogram.merges.size());
  for (std::uint32_t i = 0; i < n; ++i) leafOf[i] = i;
  DisjointSets sets(n);
  for (std::size_t m = 0; m < merges; ++m) {
    const auto& step = dendrogram.merges[m];
    sets.unite(leafOf[step.a], leafOf[step.b]);
    leafOf[step.merged] = leafOf[step.a];
  }
  return sets.components();
}

}  // namespace docclust::buckshot
