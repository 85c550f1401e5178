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

// Parallel spherical K-Means over the map/combine/reduce engine.
//
// One iteration is one job: map assigns a document to its most similar
// centroid (ties to the lowest index) and emits a one-document partial sum,
// the combiner folds partial sums inside a map task, and reduce folds them
// per cluster. Sums are exact (see exact_sum.hpp), so centroids do not depend
// on the combiner, the mapper count or the worker count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "docclust/clustering.hpp"
#include "docclust/exact_sum.hpp"
#include "docclust/minimr/engine.hpp"
#include "docclust/vecspace.hpp"

namespace docclust::kmeans {

struct KMeansConfig {
  std::size_t k = 2;
  std::size_t maxIterations = 50;
  double convergenceEps = 1e-4;
  std::uint64_t seed = 42;

  void validate(std::size_t n) const;
};

/// Per-cluster partial statistics flowing through the assignment job.
struct ClusterPartial {
  std::size_t count = 0;
  SparseSum sum;
  FixedSum similarity;  // sum of member-to-centroid cosines at assignment
  std::vector<std::uint32_t> members;  // input indices, ascending

  static ClusterPartial ofDocument(const SparseVector& v, std::uint32_t index, double similarity);
  static ClusterPartial merge(std::span<const ClusterPartial> parts);
};

struct AssignmentOutcome {
  std::vector<Label> labels;
  std::vector<ClusterPartial> clusters;  // size k; untouched clusters stay empty
  double assignedObjective = 0.0;        // sum of best cosines
  minimr::JobStats stats;
};

/// Runs the assignment job (map = nearest centroid, combine/reduce = partial
/// sums) with centroids broadcast read-only to every mapper.
AssignmentOutcome runAssignmentJob(minimr::Engine& engine, std::span<const SparseVector> vectors,
                                   std::span<const Centroid> centroids,
                                   const ExecutionConfig& exec, const char* name = "kmeans-assign");

/// Labels only. Requires at least one centroid.
std::vector<Label> assignStep(std::span<const SparseVector> vectors,
                              std::span<const Centroid> centroids, std::size_t workers = 1);

/// New centroids from per-cluster sums. Empty clusters are reseeded with the
/// non-zero document least similar to its own new centroid (lowest docId on
/// ties), each empty cluster taking a different document.
std::vector<Centroid> finalizeCentroids(std::span<const SparseVector> vectors,
                                        std::span<const Label> labels,
                                        std::span<const ClusterPartial> clusters);

/// Sequential update: normalized member means with the same reseeding rule.
std::vector<Centroid> updateStep(std::span<const SparseVector> vectors,
                                 std::span<const Label> labels, std::size_t k);

/// Seeded uniform choice of k distinct documents, non-zero vectors first.
std::vector<std::uint32_t> chooseInitialDocuments(std::span<const SparseVector> vectors,
                                                  std::size_t k, std::uint64_t seed);

/// Sum of cos(v_d, c_label(d)) with an exact accumulator; parallel over the
/// engine pool but independent of the worker count.
double objective(minimr::Engine& engine, std::span<const SparseVector> vectors,
                 std::span<const Label> labels, std::span<const Centroid> centroids);

/// Per-cluster sums of cos(v_d, c_label(d)), exact.
std::vector<FixedSum> clusterObjectives(minimr::Engine& engine, std::span<const SparseVector> vectors,
                                        std::span<const Label> labels,
                                        std::span<const Centroid> centroids);

/// Iterates assignment and update from the given centroids for at most
/// `maxRounds` rounds. With eps >= 0 it stops once the relative objective
/// gain drops below eps or labels stop changing; with eps < 0 it always runs
/// `maxRounds` rounds. A cluster keeps its previous centroid when the new
/// mean scores lower on its members (possible only through rounding), which
/// makes objectiveHistory non-decreasing exactly. Fills labels, centroids,
/// objectiveHistory, iterations and jobs of `result`.
void iterate(minimr::Engine& engine, std::span<const SparseVector> vectors,
             std::vector<Centroid> centroids, std::size_t maxRounds, double eps,
             const ExecutionConfig& exec, ClusteringResult& result);

ClusteringResult runKMeans(minimr::Engine& engine, std::span<const SparseVector> vectors,
                           const KMeansConfig& config, const ExecutionConfig& exec = {});
ClusteringResult runKMeans(std::span<const SparseVector> vectors, const KMeansConfig& config,
                           std::size_t workers);

}  // namespace docclust::kmeans
