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

// BigKClustering adapted to documents.
//
// BigK randomly chosen documents act as micro-cluster centers. One
// assignment pass summarizes every document into a micro-cluster
// (n, CF1, CF2, center, minSim). Micro-clusters are then joined into k groups
// by the transitive closure of a pairwise relation whose threshold is
// adapted until k groups remain, and one final pass assigns every document
// to the nearest group center.
//
// Pipeline on the engine:
//   job 1  micro-clusters       many mappers, one reducer
//   job 2  threshold + grouping one mapper, one reducer
//   job 3  final assignment     many mappers, many reducers

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "docclust/clustering.hpp"
#include "docclust/minimr/engine.hpp"
#include "docclust/vecspace.hpp"

namespace docclust::bkc {

struct MicroCluster {
  std::uint32_t id = 0;
  std::size_t n = 0;          // members, the center included
  std::vector<Term> cf1;      // linear sum of member vectors
  double cf2 = 0.0;           // sum of squared member norms
  SparseVector center;        // the document chosen as center
  double minSim = 1.0;        // lowest member-to-center cosine seen
};

struct GroupAssignment {
  std::vector<std::uint32_t> groupOf;  // micro-cluster index -> group id
  std::size_t numGroups = 0;

  // Search diagnostics.
  double threshold = 0.0;
  std::size_t thresholdIterations = 0;
  std::size_t groupsBeforeMerge = 0;
  std::size_t forcedMerges = 0;
  bool fallbackDropped = false;
};

struct BkcConfig {
  std::size_t bigK = 100;
  std::size_t k = 20;
  std::uint64_t seed = 42;
  std::size_t maxThresholdIterations = 64;

  void validate(std::size_t n) const;
};

struct MicroClusterOutcome {
  std::vector<MicroCluster> microClusters;
  std::vector<std::uint32_t> centerDocs;   // input index of each center
  std::vector<std::int64_t> assignment;    // input index -> micro-cluster, -1 for zero vectors
  minimr::JobStats stats;
};

/// Job 1. Zero vectors carry no direction and are left out of every
/// micro-cluster. Each center document always belongs to its own
/// micro-cluster.
MicroClusterOutcome buildMicroClusters(minimr::Engine& engine,
                                       std::span<const SparseVector> vectors, std::size_t bigK,
                                       std::uint64_t seed, const ExecutionConfig& exec = {});

/// cos(a.center, b.center) / (a.minSim - b.minSim), with `a` the later
/// micro-cluster. Non-finite or non-positive values become 0.
double microClusterSimilarity(const MicroCluster& a, const MicroCluster& b) noexcept;
double microClusterSimilarity(double centerCosine, double minA, double minB) noexcept;

/// Secondary relation used when the similarity above is 0: the center cosine
/// reaches either micro-cluster's minSim.
bool equivalentByFallback(const MicroCluster& a, const MicroCluster& b) noexcept;
bool equivalentByFallback(double centerCosine, double minA, double minB) noexcept;

/// Pairwise relation data for micro-clusters i > j, computed once.
class PairTable {
 public:
  explicit PairTable(std::span<const MicroCluster> microClusters);

  std::size_t size() const noexcept { return n_; }
  double cosine(std::size_t i, std::size_t j) const noexcept { return cos_[index(i, j)]; }
  double similarity(std::size_t i, std::size_t j) const noexcept { return sim_[index(i, j)]; }
  bool fallback(std::size_t i, std::size_t j) const noexcept { return fallback_[index(i, j)] != 0; }
  /// Largest positive similarity, 0 if none.
  double maxSimilarity() const noexcept { return maxSim_; }

  /// Whether i and j are joined at threshold s.
  bool related(std::size_t i, std::size_t j, double s, bool useFallback) const noexcept;

 private:
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    if (i < j) std::swap(i, j);
    return i * (i - 1) / 2 + j;
  }

  std::size_t n_ = 0;
  std::vector<double> cos_;
  std::vector<double> sim_;
  std::vector<std::uint8_t> fallback_;
  double maxSim_ = 0.0;
};

/// Connected components of the relation at threshold s. Group ids follow
/// the lowest micro-cluster index in each group.
GroupAssignment groupsAtThreshold(const PairTable& pairs, double s, bool useFallback = true);

/// Groups micro-clusters into exactly k groups. Starts at threshold s0 and
/// bisects on [0, max similarity]; if k is never hit exactly, the closest
/// grouping above k is reduced by repeatedly merging the two groups whose
/// CF centers are most similar.
GroupAssignment joinToGroups(std::span<const MicroCluster> microClusters, std::size_t k, double s0,
                             std::size_t maxThresholdIterations = 64);

/// Mean of all minSim values.
double initialThreshold(std::span<const MicroCluster> microClusters);

/// Normalized (sum cf1) / (sum n) per group.
std::vector<Centroid> groupCenters(std::span<const MicroCluster> microClusters,
                                   const GroupAssignment& groups);

ClusteringResult runBkc(minimr::Engine& engine, std::span<const SparseVector> vectors,
                        const BkcConfig& config, const ExecutionConfig& exec = {});
ClusteringResult runBkc(std::span<const SparseVector> vectors, const BkcConfig& config,
                        std::size_t workers);

}  // namespace docclust::bkc
