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

#include "docclust/buckshot.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

#include "docclust/kmeans.hpp"
#include "docclust/minimr/hash.hpp"

namespace docclust::buckshot {

namespace {

constexpr std::uint64_t kSampleSalt = 0x5a3c'9e1b'7d24'f061ULL;
constexpr std::uint64_t kPartitionSalt = 0xc2b2'ae3d'27d4'eb4fULL;

std::size_t ceilDiv(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

// Sort key of a sampling candidate: non-zero vectors first, then the random key.
struct Candidate {
  bool zero = false;
  std::uint64_t key = 0;
  std::uint32_t index = 0;

  friend bool operator<(const Candidate& a, const Candidate& b) {
    return std::tie(a.zero, a.key, a.index) < std::tie(b.zero, b.key, b.index);
  }
};

std::vector<Candidate> smallest(std::span<const std::vector<Candidate>> parts, std::size_t s) {
  std::vector<Candidate> all;
  for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  const std::size_t keep = std::min(s, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end());
  all.resize(keep);
  return all;
}

}  // namespace

void BuckshotConfig::validate(std::size_t n) const {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (assignmentIterations < 1 || assignmentIterations > 3) {
    throw std::invalid_argument("assignment iterations must be 1, 2 or 3 (got " +
                                std::to_string(assignmentIterations) + ")");
  }
  if (k > n) {
    throw std::invalid_argument("k=" + std::to_string(k) + " exceeds the " + std::to_string(n) +
                                " input documents; lower k or add documents");
  }
  const std::size_t s = sampleSize(k, n);
  const std::size_t m = partitions == 0 ? defaultPartitions(s) : partitions;
  if (s / m < k) {
    throw std::invalid_argument("sample of " + std::to_string(s) + " split into " +
                                std::to_string(m) + " partitions leaves fewer than k=" +
                                std::to_string(k) + " documents per partition");
  }
  if (ceilDiv(s, m) > kMaxDenseHacLeaves) {
    throw std::invalid_argument("sample of " + std::to_string(s) + " split into " +
                                std::to_string(m) + " partitions exceeds " +
                                std::to_string(kMaxDenseHacLeaves) +
                                " documents per partition; use at least " +
                                std::to_string(defaultPartitions(s)) + " partitions");
  }
}

std::size_t sampleSize(std::size_t k, std::size_t n) {
  const auto product = static_cast<unsigned __int128>(k) * n;
  auto r = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(product)));
  while (r * r > product) --r;
  while ((r + 1) * (r + 1) <= product) ++r;
  if (r * r < product) ++r;
  return static_cast<std::size_t>(r);
}

std::size_t defaultPartitions(std::size_t s) { return std::max<std::size_t>(1, ceilDiv(s, kMaxDenseHacLeaves)); }

SampleOutcome sampleDocuments(minimr::Engine& engine, std::span<const SparseVector> vectors,
                              std::size_t k, std::uint64_t seed, const ExecutionConfig& exec) {
  const std::size_t n = vectors.size();
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (k > n) {
    throw std::invalid_argument("k=" + std::to_string(k) + " exceeds the " + std::to_string(n) +
                                " input documents; lower k or add documents");
  }
  const std::size_t s = sampleSize(k, n);

  std::vector<std::uint32_t> positions(n);
  std::iota(positions.begin(), positions.end(), std::uint32_t{0});

  using Values = std::vector<Candidate>;
  minimr::JobSpec<std::uint32_t, int, Values, Values> job;
  job.name = "buckshot-sample";
  job.numMappers = exec.mappers;
  job.numReducers = 1;
  job.map = [&](const std::uint32_t& i, minimr::Emitter<int, Values>& out) {
    const std::uint64_t key = minimr::mix64(seed ^ kSampleSalt ^ minimr::mix64(i));
    out.emit(0, Values{Candidate{vectors[i].isZero(), key, i}});
  };
  job.combine = [s](const int&, std::span<const Values> parts) { return smallest(parts, s); };
  job.reduce = [s](const int&, std::span<const Values> parts) { return smallest(parts, s); };

  minimr::RunOptions options;
  options.useCombiner = exec.useCombiner;
  auto out = engine.run(job, std::span<const std::uint32_t>(positions), options);

  SampleOutcome result;
  result.stats = std::move(out.stats);
  for (const auto& c : out.records.front().second) result.indices.push_back(c.index);
  std::sort(result.indices.begin(), result.indices.end());
  result.sample.reserve(s);
  for (auto i : result.indices) result.sample.push_back(vectors[i]);
  result.remainder.reserve(n - s);
  std::size_t next = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (next < result.indices.size() && result.indices[next] == i) {
      ++next;
    } else {
      result.remainder.push_back(i);
    }
  }
  return result;
}

std::vector<std::size_t> partitionCapacities(std::size_t s, std::size_t partitions) {
  if (partitions < 1) throw std::invalid_argument("partitions must be >= 1");
  std::vector<std::size_t> caps(partitions, s / partitions);
  for (std::size_t m = 0; m < s % partitions; ++m) ++caps[m];
  return caps;
}

std::vector<std::uint32_t> drawPartitions(std::size_t s, std::size_t partitions,
                                          std::uint64_t seed) {
  auto remaining = partitionCapacities(s, partitions);
  std::vector<std::uint32_t> of(s);
  std::size_t total = s;
  for (std::size_t i = 0; i < s; ++i) {
    auto r = minimr::mix64(seed ^ kPartitionSalt ^ minimr::mix64(i)) % total;
    std::uint32_t m = 0;
    while (r >= remaining[m]) {
      r -= remaining[m];
      ++m;
    }
    of[i] = m;
    --remaining[m];
    --total;
  }
  return of;
}

PartitionedOutcome hacPartitioned(minimr::Engine& engine, std::span<const SparseVector> sample,
                                  std::size_t k, std::size_t partitions, std::uint64_t seed,
                                  const ExecutionConfig& exec) {
  const std::size_t s = sample.size();
  if (partitions < 1) throw std::invalid_argument("partitions must be >= 1");
  if (k < 1 || s / partitions < k) {
    throw std::invalid_argument("cannot split " + std::to_string(s) + " documents into " +
                                std::to_string(partitions) + " partitions of at least k=" +
                                std::to_string(k));
  }

  PartitionedOutcome result;
  result.partitionOf = drawPartitions(s, partitions, seed);
  result.partitionSizes.assign(partitions, 0);
  for (auto m : result.partitionOf) ++result.partitionSizes[m];

  struct Local {
    std::vector<std::uint32_t> positions;
    std::vector<Label> labels;
    std::vector<Centroid> centroids;
  };
  std::vector<std::uint32_t> positions(s);
  std::iota(positions.begin(), positions.end(), std::uint32_t{0});

  minimr::JobSpec<std::uint32_t, std::uint32_t, std::uint32_t, Local> job;
  job.name = "buckshot-hac";
  job.numMappers = exec.mappers;
  job.numReducers = partitions;
  const auto& partitionOf = result.partitionOf;
  job.map = [&](const std::uint32_t& i, minimr::Emitter<std::uint32_t, std::uint32_t>& out) {
    out.emit(partitionOf[i], i);
  };
  job.reduce = [&](const std::uint32_t&, std::span<const std::uint32_t> members) {
    Local local;
    local.positions.assign(members.begin(), members.end());
    std::vector<SparseVector> part;
    part.reserve(members.size());
    for (auto i : members) part.push_back(sample[i]);
    local.labels = hacSingleLink(part, k).labels;

    std::vector<std::vector<const SparseVector*>> groups(k);
    for (std::size_t j = 0; j < part.size(); ++j) groups[local.labels[j]].push_back(&sample[members[j]]);
    for (const auto& g : groups) local.centroids.push_back(centroidOf(std::span<const SparseVector* const>(g)));
    return local;
  };
  auto out = engine.run(job, std::span<const std::uint32_t>(positions));
  result.stats = std::move(out.stats);

  // Merge: local centroids, in partition order, clustered down to k.
  std::vector<SparseVector> centers;
  for (const auto& [m, local] : out.records) {
    for (const auto& c : local.centroids) {
      centers.push_back(SparseVector{static_cast<DocId>(centers.size()), c.terms});
    }
  }
  result.mergeInputs = centers.size();
  const auto global = hacSingleLink(centers, k).labels;

  std::vector<Label> raw(s);
  std::size_t offset = 0;
  for (const auto& [m, local] : out.records) {
    for (std::size_t j = 0; j < local.positions.size(); ++j) {
      raw[local.positions[j]] = global[offset + local.labels[j]];
    }
    offset += local.centroids.size();
  }

  // Number clusters by their first sample position.
  constexpr Label kUnset = ~Label{0};
  std::vector<Label> renumber(k, kUnset);
  Label next = 0;
  result.labels.resize(s);
  for (std::size_t i = 0; i < s; ++i) {
    if (renumber[raw[i]] == kUnset) renumber[raw[i]] = next++;
    result.labels[i] = renumber[raw[i]];
  }
  return result;
}

std::vector<Label> hacPartitioned(std::span<const SparseVector> sample, std::size_t k,
                                  std::size_t partitions, std::size_t workers, std::uint64_t seed) {
  minimr::Engine engine(workers);
  ExecutionConfig exec;
  exec.workers = workers;
  return hacPartitioned(engine, sample, k, partitions, seed, exec).labels;
}

ClusteringResult runBuckshot(minimr::Engine& engine, std::span<const SparseVector> vectors,
                             const BuckshotConfig& config, const ExecutionConfig& exec) {
  config.validate(vectors.size());
  const auto t0 = std::chrono::steady_clock::now();
  ClusteringResult result;
  result.algorithm = "buckshot";
  result.workers = engine.workers();

  auto sampled = sampleDocuments(engine, vectors, config.k, config.seed, exec);
  result.jobs.push_back(sampled.stats);
  result.phases.push_back({"sampling", sampled.stats.totalMs});

  const auto tHac = std::chrono::steady_clock::now();
  const std::size_t s = sampled.sample.size();
  const std::size_t m = config.partitions == 0 ? defaultPartitions(s) : config.partitions;
  auto hac = hacPartitioned(engine, sampled.sample, config.k, m, config.seed, exec);
  result.jobs.push_back(hac.stats);

  std::vector<std::vector<const SparseVector*>> members(config.k);
  for (std::size_t i = 0; i < s; ++i) members[hac.labels[i]].push_back(&sampled.sample[i]);
  std::vector<Centroid> initial;
  initial.reserve(config.k);
  for (const auto& g : members) initial.push_back(centroidOf(std::span<const SparseVector* const>(g)));
  result.phases.push_back({"hac", minimr::detail::millisSince(tHac)});

  const auto tAssign = std::chrono::steady_clock::now();
  kmeans::iterate(engine, vectors, std::move(initial), config.assignmentIterations, -1.0, exec,
                  result);
  result.phases.push_back({"assignment", minimr::detail::millisSince(tAssign)});

  result.rss = rss(vectors, result.labels, result.centroids);
  result.wallMs = minimr::detail::millisSince(t0);
  result.info["sample_size"] = static_cast<double>(s);
  result.info["partitions"] = static_cast<double>(m);
  result.info["merge_inputs"] = static_cast<double>(hac.mergeInputs);
  result.info["assignment_iterations"] = static_cast<double>(config.assignmentIterations);
  return result;
}

ClusteringResult runBuckshot(std::span<const SparseVector> vectors, const BuckshotConfig& config,
                             std::size_t workers) {
  minimr::Engine engine(workers);
  ExecutionConfig exec;
  exec.workers = workers;
  return runBuckshot(engine, vectors, config, exec);
}

}  // namespace docclust::buckshot
