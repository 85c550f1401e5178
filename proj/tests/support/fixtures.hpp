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

// Vector fixtures shared by the unit and acceptance tests.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "docclust/corpus.hpp"
#include "docclust/sparse_vector.hpp"
#include "docclust/synthetic.hpp"

namespace docclust::testing {

/// n unit vectors with non-negative weights over `dims` dimensions, each
/// holding about `density * dims` terms (at least one).
inline std::vector<SparseVector> randomVectors(std::size_t n, std::size_t dims, double density,
                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> anyDim(0, dims - 1);
  std::vector<SparseVector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Term> terms;
    for (std::size_t d = 0; d < dims; ++d) {
      if (unit(rng) < density) terms.push_back(Term{static_cast<Dim>(d), 0.05 + unit(rng)});
    }
    if (terms.empty()) terms.push_back(Term{static_cast<Dim>(anyDim(rng)), 1.0});
    normalizeInPlace(terms);
    out.push_back(SparseVector{i, std::move(terms)});
  }
  return out;
}

/// Bundles on disjoint dimension blocks: every vector of bundle b lives in
/// dimensions [b * width, (b + 1) * width), so vectors of different bundles
/// are orthogonal.
inline std::vector<SparseVector> orthogonalBundles(std::size_t bundles, std::size_t perBundle,
                                                   std::size_t width, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<SparseVector> out;
  for (std::size_t b = 0; b < bundles; ++b) {
    for (std::size_t i = 0; i < perBundle; ++i) {
      std::vector<Term> terms;
      for (std::size_t d = 0; d < width; ++d) {
        terms.push_back(Term{static_cast<Dim>(b * width + d), 0.5 + unit(rng)});
      }
      normalizeInPlace(terms);
      out.push_back(SparseVector{out.size(), std::move(terms)});
    }
  }
  return out;
}

/// Vectors of a synthetic newsgroup corpus (minDf 3).
inline std::vector<SparseVector> newsgroupVectors(std::size_t docsPerGroup, std::size_t groups = 20,
                                                  std::uint64_t seed = 42) {
  synthetic::NewsgroupsConfig config;
  config.docsPerGroup = docsPerGroup;
  config.groups = groups;
  config.seed = seed;
  const auto postings = synthetic::generateNewsgroups(config);
  return buildVectors(synthetic::toDocuments(postings)).vectors;
}

}  // namespace docclust::testing
