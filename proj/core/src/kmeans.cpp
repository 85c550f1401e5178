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

#include "docclust/kmeans.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace docclust::kmeans {

void KMeansConfig::validate(std::size_t n) const {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (k > n) {
    throw std::invalid_argument("k=" + std::to_string(k) + " exceeds the document count " +
                                std::to_string(n));
  }
  if (maxIterations < 1) throw std::invalid_argument("maxIterations must be >= 1");
  if (!(convergenceEps >= 0.0)) throw std::invalid_argument("convergenceEps must be >= 0");
}

ClusterPartial ClusterPartial::ofDocument(const SparseVector& v, std::uint32_t index,
                                          double similarity) {
  ClusterPartial p;
  p.count = 1;
  p.sum = SparseSum(v);
  p.similarity.add(similarity);
  p.members.push_back(index);
  return p;
}

ClusterPartial ClusterPartial::merge(std::span<const ClusterPartial> parts) {
  ClusterPartial out;
  std::vector<const SparseSum*> sums;
  sums.reserve(parts.size());
  std::size_t members = 0;
  for (const auto& p : parts) {
    out.count += p.count;
    out.similarity += p.similarity;
    sums.push_back(&p.sum);
    members += p.members.size();
  }
  out.sum = SparseSum::merge(std::span<const SparseSum* const>(sums));
  out.members.reserve(members);
  for (const auto& p : parts) out.members.insert(out.members.end(), p.members.begin(), p.members.end());
  return out;
}

AssignmentOutcome runAssignmentJob(minimr::Engine& engine, std::span<const SparseVector> vectors,
                                   std::span<const Centroid> centroids,
                                   const ExecutionConfig& exec, const char* name) {
  if (centroids.empty()) throw std::invalid_argument("assignment needs at least one centroid");
  const NearestCenter index(centroids);

  minimr::JobSpec<SparseVector, Label, ClusterPartial, ClusterPartial> job;
  job.name = name;
  job.numMappers = exec.mappers;
  job.numReducers = exec.reducers;
  job.map = [&index](const SparseVector& v, minimr::Emitter<Label, ClusterPartial>& out) {
    thread_local std::vector<double> scratch;
    const auto match = index.nearest(v, scratch);
    out.emit(match.index,
             ClusterPartial::ofDocument(v, static_cast<std::uint32_t>(out.record()), match.similarity));
  };
  job.combine = [](const Label&, std::span<const ClusterPartial> parts) {
    return ClusterPartial::merge(parts);
  };
  job.reduce = [](const Label&, std::span<const ClusterPartial> parts) {
    return ClusterPartial::merge(parts);
  };

  auto output = engine.run(job, vectors, minimr::RunOptions{exec.useCombiner});

  AssignmentOutcome outcome;
  outcome.stats = output.stats;
  outcome.labels.assign(vectors.size(), 0);
  outcome.clusters.resize(centroids.size());
  FixedSum total;
  for (auto& [label, cluster] : output.records) {
    for (auto m : cluster.members) outcome.labels[m] = label;
    total += cluster.similarity;
    outcome.clusters[label] = std::move(cluster);
  }
  outcome.assignedObjective = total.value();
  return outcome;
}

std::vector<Label> assignStep(std::span<const SparseVector> vectors,
                              std::span<const Centroid> centroids, std::size_t workers) {
  minimr::Engine engine(workers);
  ExecutionConfig exec;
  exec.workers = workers;
  return runAssignmentJob(engine, vectors, centroids, exec).labels;
}

std::vector<Centroid> finalizeCentroids(std::span<const SparseVector> vectors,
                                        std::span<const Label> labels,
                                        std::span<const ClusterPartial> clusters) {
  std::vector<Centroid> centroids(clusters.size());
  std::vector<std::size_t> empty;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (clusters[i].count > 0) {
      centroids[i] = centroidFromSum(clusters[i].sum, clusters[i].count);
    } else {
      empty.push_back(i);
    }
  }
  if (empty.empty()) return centroids;

  // Farthest-point reseeding: lowest cosine to the document's own centroid.
  const NearestCenter index(centroids);
  std::vector<std::uint32_t> candidates;
  std::vector<double> own(vectors.size(), 0.0);
  for (std::size_t d = 0; d < vectors.size(); ++d) {
    if (vectors[d].isZero()) continue;
    own[d] = index.similarity(vectors[d], labels[d]);
    candidates.push_back(static_cast<std::uint32_t>(d));
  }
  const std::size_t take = std::min(empty.size(), candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(take),
                    candidates.end(), [&](std::uint32_t a, std::uint32_t b) {
                      if (own[a] != own[b]) return own[a] < own[b];
                      return vectors[a].docId < vectors[b].docId;
                    });
  for (std::size_t e = 0; e < take; ++e) {
    centroids[empty[e]] = centroidAt(vectors[candidates[e]], 0);
  }
  return centroids;
}

std::vector<Centroid> updateStep(std::span<const SparseVector> vectors,
                                 std::span<const Label> labels, std::size_t k) {
  std::vector<std::vector<const SparseVector*>> members(k);
  for (std::size_t d = 0; d < vectors.size(); ++d) {
    if (labels[d] >= k) throw std::out_of_range("label out of range in updateStep");
    members[labels[d]].push_back(&vectors[d]);
  }
  std::vector<ClusterPartial> clusters(k);
  for (std::size_t i = 0; i < k; ++i) {
    clusters[i].count = members[i].size();
    clusters[i].sum = SparseSum::of(members[i]);
  }
  return finalizeCentroids(vectors, labels, clusters);
}

std::vector<std::uint32_t> chooseInitialDocuments(std::span<const SparseVector> vectors,
                                                  std::size_t k, std::uint64_t seed) {
  if (k > vectors.size()) throw std::invalid_argument("cannot choose more documents than exist");
  std::vector<std::uint32_t> nonZero, zero;
  for (std::size_t d = 0; d < vectors.size(); ++d) {
    (vectors[d].isZero() ? zero : nonZero).push_back(static_cast<std::uint32_t>(d));
  }
  std::mt19937_64 rng(seed);
  auto partialShuffle = [&rng](std::vector<std::uint32_t>& pool, std::size_t take) {
    for (std::size_t i = 0; i < take; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(take);
  };
  const std::size_t fromNonZero = std::min(k, nonZero.size());
  partialShuffle(nonZero, fromNonZero);
  if (fromNonZero < k) {
    partialShuffle(zero, k - fromNonZero);
    nonZero.insert(nonZero.end(), zero.begin(), zero.end());
  }
  return nonZero;
}

std::vector<FixedSum> clusterObjectives(minimr::Engine& engine, std::span<const SparseVector> vectors,
                                        std::span<const Label> labels,
                                        std::span<const Centroid> centroids) {
  const NearestCenter index(centroids);
  const std::size_t k = centroids.size();
  const std::size_t chunks = std::max<std::size_t>(1, engine.workers() * 4);
  const std::size_t size = (vectors.size() + chunks - 1) / chunks;
  std::vector<std::vector<FixedSum>> partial(chunks, std::vector<FixedSum>(k));
  engine.pool().parallelFor(chunks, [&](std::size_t c) {
    const std::size_t begin = c * size;
    const std::size_t end = std::min(vectors.size(), begin + size);
    for (std::size_t d = begin; d < end; ++d) {
      if (labels[d] >= k) throw std::out_of_range("label out of range in clusterObjectives");
      partial[c][labels[d]].add(index.similarity(vectors[d], labels[d]));
    }
  });
  std::vector<FixedSum> total(k);
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < k; ++i) total[i] += p[i];
  }
  return total;
}

double objective(minimr::Engine& engine, std::span<const SparseVector> vectors,
                 std::span<const Label> labels, std::span<const Centroid> centroids) {
  const NearestCenter index(centroids);
  const std::size_t chunks = std::max<std::size_t>(1, engine.workers() * 4);
  const std::size_t size = (vectors.size() + chunks - 1) / chunks;
  std::vector<FixedSum> partial(chunks);
  engine.pool().parallelFor(chunks, [&](std::size_t c) {
    const std::size_t begin = c * size;
    const std::size_t end = std::min(vectors.size(), begin + size);
    for (std::size_t d = begin; d < end; ++d) {
      partial[c].add(index.similarity(vectors[d], labels[d]));
    }
  });
  FixedSum total;
  for (const auto& p : partial) total += p;
  return total.value();
}

void iterate(minimr::Engine& engine, std::span<const SparseVector> vectors,
             std::vector<Centroid> centroids, std::size_t maxRounds, double eps,
             const ExecutionConfig& exec, ClusteringResult& result) {
  double previous = 0.0;
  for (std::size_t round = 1; round <= maxRounds; ++round) {
    auto outcome = runAssignmentJob(engine, vectors, centroids, exec);
    if (round == 1) previous = outcome.assignedObjective;
    auto updated = finalizeCentroids(vectors, outcome.labels, outcome.clusters);
    // A mean can lose to the centroid its members were just assigned to only
    // through rounding; keep the old one then so the history never drops.
    const auto perCluster = clusterObjectives(engine, vectors, outcome.labels, updated);
    FixedSum total;
    for (std::size_t c = 0; c < updated.size(); ++c) {
      const auto& assigned = outcome.clusters[c];
      if (assigned.count > 0 && perCluster[c].raw() < assigned.similarity.raw()) {
        updated[c] = centroids[c];
        updated[c].memberCount = assigned.count;
        total += assigned.similarity;
      } else {
        total += perCluster[c];
      }
    }
    centroids = std::move(updated);
    const double current = total.value();
    const bool unchanged = round > 1 && outcome.labels == result.labels;

    result.objectiveHistory.push_back(current);
    result.jobs.push_back(std::move(outcome.stats));
    result.labels = std::move(outcome.labels);
    result.iterations = round;

    if (eps >= 0.0) {
      const double scale = std::max(std::fabs(previous), std::numeric_limits<double>::min());
      const double gain = (current - previous) / scale;
      if (unchanged || gain < eps) break;
    }
    previous = current;
  }
  result.centroids = std::move(centroids);
}

ClusteringResult runKMeans(minimr::Engine& engine, std::span<const SparseVector> vectors,
                           const KMeansConfig& config, const ExecutionConfig& exec) {
  config.validate(vectors.size());
  const auto t0 = std::chrono::steady_clock::now();

  ClusteringResult result;
  result.algorithm = "kmeans";
  result.workers = engine.workers();

  std::vector<Centroid> initial;
  initial.reserve(config.k);
  for (auto d : chooseInitialDocuments(vectors, config.k, config.seed)) {
    initial.push_back(centroidAt(vectors[d], 0));
  }
  iterate(engine, vectors, std::move(initial), config.maxIterations, config.convergenceEps, exec,
          result);
  result.rss = rss(vectors, result.labels, result.centroids);
  result.wallMs = minimr::detail::millisSince(t0);
  result.phases.push_back({"iterations", result.wallMs});
  return result;
}

ClusteringResult runKMeans(std::span<const SparseVector> vectors, const KMeansConfig& config,
                           std::size_t workers) {
  minimr::Engine engine(workers);
  ExecutionConfig exec;
  exec.workers = workers;
  return runKMeans(engine, vectors, config, exec);
}

}  // namespace docclust::kmeans
