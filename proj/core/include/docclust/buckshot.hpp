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

// Buckshot: single-link clustering of a random sample of ceil(sqrt(k*n))
// documents seeds k centroids, then a fixed number of K-Means rounds assign
// the whole collection.
//
// The textbook loop reads "iterate n - k times"; from s leaves only s - k
// merges leave k clusters, so that is what runs here.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "docclust/clustering.hpp"
#include "docclust/hac.hpp"
#include "docclust/minimr/engine.hpp"
#include "docclust/sparse_vector.hpp"

namespace docclust::buckshot {

struct BuckshotConfig {
  std::size_t k = 20;
  std::size_t assignmentIterations = 2;  // 1..3
  std::size_t partitions = 0;            // 0 picks the fewest that keep local HAC dense
  std::uint64_t seed = 42;

  void validate(std::size_t n) const;
};

/// ceil(sqrt(k * n)), computed exactly.
std::size_t sampleSize(std::size_t k, std::size_t n);

/// Partition count used when `partitions` is 0.
std::size_t defaultPartitions(std::size_t sampleSize);

struct SampleOutcome {
  std::vector<std::uint32_t> indices;    // sampled input positions, ascending
  std::vector<SparseVector> sample;      // vectors at `indices`
  std::vector<std::uint32_t> remainder;  // every other position, ascending
  minimr::JobStats stats;
};

/// Uniform sample without replacement of sampleSize(k, n) documents, drawn
/// by a job whose mappers attach seeded random keys and whose single reducer
/// keeps the smallest. Zero vectors are only drawn once non-zero ones run out.
SampleOutcome sampleDocuments(minimr::Engine& engine, std::span<const SparseVector> vectors,
                              std::size_t k, std::uint64_t seed, const ExecutionConfig& exec = {});

/// Capacity of each partition: floor(s / M), plus one for the first s % M.
std::vector<std::size_t> partitionCapacities(std::size_t s, std::size_t partitions);

/// Partition of each sample position. Each draw picks partition m with
/// probability proportional to its remaining capacity, so the final sizes
/// equal partitionCapacities(s, M).
std::vector<std::uint32_t> drawPartitions(std::size_t s, std::size_t partitions,
                                          std::uint64_t seed);

struct PartitionedOutcome {
  std::vector<Label> labels;  // per sample position
  std::vector<std::uint32_t> partitionOf;
  std::vector<std::size_t> partitionSizes;
  std::size_t mergeInputs = 0;  // local clusters fed to the merge phase
  minimr::JobStats stats;
};

/// Each partition is clustered locally to k by single-link; the M*k local
/// centroids are then clustered to k by single-link and every sample
/// document takes the label of its local cluster. M = 1 equals
/// hacSingleLink(sample, k).
PartitionedOutcome hacPartitioned(minimr::Engine& engine, std::span<const SparseVector> sample,
                                  std::size_t k, std::size_t partitions, std::uint64_t seed,
                                  const ExecutionConfig& exec = {});
std::vector<Label> hacPartitioned(std::span<const SparseVector> sample, std::size_t k,
                                  std::size_t partitions, std::size_t workers,
                                  std::uint64_t seed = 42);

ClusteringResult runBuckshot(minimr::Engine& engine, std::span<const SparseVector> vectors,
                             const BuckshotConfig& config, const ExecutionConfig& exec = {});
ClusteringResult runBuckshot(std::span<const SparseVector> vectors, const BuckshotConfig& config,
                             std::size_t workers);

}  // namespace docclust::buckshot
