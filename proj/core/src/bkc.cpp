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

#include "docclust/bkc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "docclust/exact_sum.hpp"
#include "docclust/kmeans.hpp"
#include "docclust/union_find.hpp"

namespace docclust::bkc {

void BkcConfig::validate(std::size_t n) const {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (k > bigK) {
    throw std::invalid_argument("k=" + std::to_string(k) + " exceeds big-k=" + std::to_string(bigK));
  }
  if (bigK > n) {
    throw std::invalid_argument("big-k=" + std::to_string(bigK) + " exceeds the document count " +
                                std::to_string(n));
  }
  if (maxThresholdIterations < 1) throw std::invalid_argument("maxThresholdIterations must be >= 1");
}

namespace {

struct MicroPartial {
  std::size_t count = 0;
  SparseSum cf1;
  FixedSum cf2;
  double minSim = 1.0;
  std::vector<std::uint32_t> members;

  static MicroPartial merge(std::span<const MicroPartial> parts) {
    MicroPartial out;
    std::vector<const SparseSum*> sums;
    for (const auto& p : parts) {
      out.count += p.count;
      out.cf2 += p.cf2;
      out.minSim = std::min(out.minSim, p.minSim);
      sums.push_back(&p.cf1);
      out.members.insert(out.members.end(), p.members.begin(), p.members.end());
    }
    out.cf1 = SparseSum::merge(std::span<const SparseSum* const>(sums));
    return out;
  }
};

}  // namespace

MicroClusterOutcome buildMicroClusters(minimr::Engine& engine,
                                       std::span<const SparseVector> vectors, std::size_t bigK,
                                       std::uint64_t seed, const ExecutionConfig& exec) {
  if (bigK < 1 || bigK > vectors.size()) {
    throw std::invalid_argument("big-k=" + std::to_string(bigK) + " must be in [1, " +
                                std::to_string(vectors.size()) + "]");
  }
  MicroClusterOutcome outcome;
  outcome.centerDocs = kmeans::chooseInitialDocuments(vectors, bigK, seed);

  std::vector<std::int64_t> centerOf(vectors.size(), -1);
  std::vector<SparseVector> centers;
  centers.reserve(bigK);
  for (std::size_t i = 0; i < bigK; ++i) {
    centerOf[outcome.centerDocs[i]] = static_cast<std::int64_t>(i);
    centers.push_back(vectors[outcome.centerDocs[i]]);
  }
  const NearestCenter index{std::span<const SparseVector>(centers)};

  minimr::JobSpec<SparseVector, Label, MicroPartial, MicroPartial> job;
  job.name = "bkc-microclusters";
  job.numMappers = exec.mappers;
  job.numReducers = 1;
  job.map = [&](const SparseVector& v, minimr::Emitter<Label, MicroPartial>& out) {
    if (v.isZero()) return;
    const auto record = static_cast<std::uint32_t>(out.record());
    Label target;
    double sim;
    if (centerOf[record] >= 0) {
      target = static_cast<Label>(centerOf[record]);
      sim = 1.0;
    } else {
      thread_local std::vector<double> scratch;
      const auto match = index.nearest(v, scratch);
      target = match.index;
      sim = match.similarity;
    }
    MicroPartial p;
    p.count = 1;
    p.cf1 = SparseSum(v);
    p.cf2.add(v.squaredNorm());
    p.minSim = sim;
    p.members.push_back(record);
    out.emit(target, std::move(p));
  };
  job.combine = [](const Label&, std::span<const MicroPartial> parts) {
    return MicroPartial::merge(parts);
  };
  job.reduce = [](const Label&, std::span<const MicroPartial> parts) {
    return MicroPartial::merge(parts);
  };

  auto output = engine.run(job, vectors, minimr::RunOptions{exec.useCombiner});
  outcome.stats = output.stats;
  outcome.assignment.assign(vectors.size(), -1);
  outcome.microClusters.resize(bigK);
  for (auto& [id, partial] : output.records) {
    auto& mc = outcome.microClusters[id];
    mc.id = id;
    mc.n = partial.count;
    mc.cf1 = partial.cf1.toTerms();
    mc.cf2 = partial.cf2.value();
    mc.minSim = std::clamp(partial.minSim, 0.0, 1.0);
    for (auto m : partial.members) outcome.assignment[m] = id;
  }
  for (std::size_t i = 0; i < bigK; ++i) {
    outcome.microClusters[i].id = static_cast<std::uint32_t>(i);
    outcome.microClusters[i].center = centers[i];
  }
  return outcome;
}

double microClusterSimilarity(double centerCosine, double minA, double minB) noexcept {
  const double raw = centerCosine / (minA - minB);
  if (!std::isfinite(raw) || raw <= 0.0) return 0.0;
  return raw;
}

double microClusterSimilarity(const MicroCluster& a, const MicroCluster& b) noexcept {
  return microClusterSimilarity(cosine(a.center, b.center), a.minSim, b.minSim);
}

bool equivalentByFallback(double centerCosine, double minA, double minB) noexcept {
  return microClusterSimilarity(centerCosine, minA, minB) == 0.0 &&
         (centerCosine >= minA || centerCosine >= minB);
}

bool equivalentByFallback(const MicroCluster& a, const MicroCluster& b) noexcept {
  return equivalentByFallback(cosine(a.center, b.center), a.minSim, b.minSim);
}

PairTable::PairTable(std::span<const MicroCluster> mcs) : n_(mcs.size()) {
  const std::size_t pairs = n_ * (n_ > 0 ? n_ - 1 : 0) / 2;
  cos_.resize(pairs);
  sim_.resize(pairs);
  fallback_.resize(pairs);
  for (std::size_t i = 1; i < n_; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const std::size_t p = index(i, j);
      const double c = docclust::cosine(mcs[i].center, mcs[j].center);
      cos_[p] = c;
      sim_[p] = microClusterSimilarity(c, mcs[i].minSim, mcs[j].minSim);
      fallback_[p] = equivalentByFallback(c, mcs[i].minSim, mcs[j].minSim) ? 1 : 0;
      maxSim_ = std::max(maxSim_, sim_[p]);
    }
  }
}

bool PairTable::related(std::size_t i, std::size_t j, double s, bool useFallback) const noexcept {
  const std::size_t p = index(i, j);
  if (sim_[p] == 0.0) return useFallback && fallback_[p] != 0;
  return sim_[p] >= s;
}

GroupAssignment groupsAtThreshold(const PairTable& pairs, double s, bool useFallback) {
  DisjointSets sets(pairs.size());
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (pairs.related(i, j, s, useFallback)) {
        sets.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
      }
    }
  }
  GroupAssignment g;
  g.groupOf = sets.components(&g.numGroups);
  g.threshold = s;
  return g;
}

double initialThreshold(std::span<const MicroCluster> microClusters) {
  if (microClusters.empty()) return 0.0;
  double s = 0.0;
  for (const auto& mc : microClusters) s += mc.minSim;
  return s / static_cast<double>(microClusters.size());
}

namespace {

SparseSum cfSum(std::span<const MicroCluster> mcs, std::span<const std::uint32_t> members,
                std::size_t& count) {
  std::vector<SparseSum> parts;
  parts.reserve(members.size());
  count = 0;
  for (auto m : members) {
    SparseVector cf{0, mcs[m].cf1};
    parts.emplace_back(cf);
    count += mcs[m].n;
  }
  return SparseSum::merge(std::span<const SparseSum>(parts));
}

std::vector<std::vector<std::uint32_t>> membersByGroup(const GroupAssignment& groups) {
  std::vector<std::vector<std::uint32_t>> members(groups.numGroups);
  for (std::uint32_t i = 0; i < groups.groupOf.size(); ++i) members[groups.groupOf[i]].push_back(i);
  return members;
}

// Greedy agglomeration of whole groups down to k by CF-center cosine.
void mergeDownTo(std::span<const MicroCluster> mcs, GroupAssignment& g, std::size_t k) {
  auto members = membersByGroup(g);
  std::vector<Centroid> centers(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    std::size_t n = 0;
    const auto sum = cfSum(mcs, members[i], n);
    centers[i] = centroidFromSum(sum, n);
  }
  const std::size_t G = members.size();
  std::vector<bool> alive(G, true);
  std::vector<std::vector<double>> sim(G, std::vector<double>(G, 0.0));
  for (std::size_t a = 0; a < G; ++a) {
    for (std::size_t b = a + 1; b < G; ++b) sim[a][b] = sim[b][a] = dot(centers[a].terms, centers[b].terms);
  }
  std::size_t live = G;
  while (live > k) {
    std::size_t bestA = 0, bestB = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < G; ++a) {
      if (!alive[a]) continue;
      for (std::size_t b = a + 1; b < G; ++b) {
        if (alive[b] && sim[a][b] > best) {
          best = sim[a][b];
          bestA = a;
          bestB = b;
        }
      }
    }
    members[bestA].insert(members[bestA].end(), members[bestB].begin(), members[bestB].end());
    std::sort(members[bestA].begin(), members[bestA].end());
    members[bestB].clear();
    alive[bestB] = false;
    --live;
    ++g.forcedMerges;
    std::size_t n = 0;
    centers[bestA] = centroidFromSum(cfSum(mcs, members[bestA], n), n);
    for (std::size_t x = 0; x < G; ++x) {
      if (alive[x] && x != bestA) sim[bestA][x] = sim[x][bestA] = dot(centers[bestA].terms, centers[x].terms);
    }
  }
  // Renumber by lowest micro-cluster index.
  DisjointSets sets(g.groupOf.size());
  for (const auto& m : members) {
    for (std::size_t i = 1; i < m.size(); ++i) sets.unite(m[0], m[i]);
  }
  g.groupOf = sets.components(&g.numGroups);
}

}  // namespace

GroupAssignment joinToGroups(std::span<const MicroCluster> microClusters, std::size_t k, double s0,
                             std::size_t maxThresholdIterations) {
  const std::size_t B = microClusters.size();
  if (k < 1 || k > B) {
    throw std::invalid_argument("cannot form k=" + std::to_string(k) + " groups from " +
                                std::to_string(B) + " micro-clusters");
  }
  if (k == B) {
    GroupAssignment g;
    g.groupOf.resize(B);
    std::iota(g.groupOf.begin(), g.groupOf.end(), std::uint32_t{0});
    g.numGroups = B;
    g.groupsBeforeMerge = B;
    g.threshold = std::numeric_limits<double>::infinity();
    return g;
  }

  const PairTable pairs(microClusters);
  const double top = pairs.maxSimilarity() > 0.0
                         ? std::nextafter(pairs.maxSimilarity(), std::numeric_limits<double>::infinity())
                         : 1.0;
  std::size_t iterations = 0;

  auto search = [&](bool useFallback) -> std::optional<GroupAssignment> {
    std::optional<GroupAssignment> above;
    double lo = 0.0, hi = top;
    double s = std::clamp(s0, lo, hi);
    for (std::size_t it = 0; it < maxThresholdIterations; ++it) {
      auto g = groupsAtThreshold(pairs, s, useFallback);
      ++iterations;
      if (g.numGroups == k) return g;
      if (g.numGroups > k) {
        if (!above || g.numGroups < above->numGroups) above = g;
        hi = s;
      } else {
        lo = s;
      }
      const double next = 0.5 * (lo + hi);
      if (next == s || next == lo || next == hi) break;
      s = next;
    }
    if (!above) {
      // Nothing above k seen: only the relation's upper end can split further.
      auto g = groupsAtThreshold(pairs, std::numeric_limits<double>::infinity(), useFallback);
      ++iterations;
      if (g.numGroups >= k) above = g;
    }
    return above;
  };

  bool fallbackDropped = false;
  auto found = search(true);
  if (!found) {
    // Fallback links alone leave fewer than k components; search again on
    // the similarity relation only.
    fallbackDropped = true;
    found = search(false);
  }
  GroupAssignment g = std::move(*found);
  g.thresholdIterations = iterations;
  g.groupsBeforeMerge = g.numGroups;
  g.fallbackDropped = fallbackDropped;
  if (g.numGroups > k) mergeDownTo(microClusters, g, k);
  return g;
}

std::vector<Centroid> groupCenters(std::span<const MicroCluster> microClusters,
                                   const GroupAssignment& groups) {
  const auto members = membersByGroup(groups);
  std::vector<Centroid> centers;
  centers.reserve(members.size());
  for (const auto& m : members) {
    std::size_t n = 0;
    const auto sum = cfSum(microClusters, m, n);
    centers.push_back(centroidFromSum(sum, n));
  }
  return centers;
}

ClusteringResult runBkc(minimr::Engine& engine, std::span<const SparseVector> vectors,
                        const BkcConfig& config, const ExecutionConfig& exec) {
  config.validate(vectors.size());
  const auto t0 = std::chrono::steady_clock::now();
  ClusteringResult result;
  result.algorithm = "bkc";
  result.workers = engine.workers();

  // Job 1: micro-clusters.
  auto micro = buildMicroClusters(engine, vectors, config.bigK, config.seed, exec);
  result.jobs.push_back(micro.stats);
  result.phases.push_back({"microclusters", micro.stats.totalMs});
  const auto& mcs = micro.microClusters;

  // Job 2: initial threshold in the mapper, grouping in the single reducer.
  struct Grouping {
    double s0 = 0.0;
    GroupAssignment groups;
    std::vector<Centroid> centers;
  };
  std::vector<std::uint32_t> ids(mcs.size());
  std::iota(ids.begin(), ids.end(), std::uint32_t{0});
  minimr::JobSpec<std::uint32_t, int, double, Grouping> job2;
  job2.name = "bkc-grouping";
  job2.numMappers = 1;
  job2.numReducers = 1;
  job2.map = [&](const std::uint32_t& id, minimr::Emitter<int, double>& out) {
    out.emit(0, mcs[id].minSim);
  };
  job2.reduce = [&](const int&, std::span<const double> minSims) {
    Grouping g;
    for (double m : minSims) g.s0 += m;
    g.s0 /= static_cast<double>(minSims.size());
    g.groups = joinToGroups(mcs, config.k, g.s0, config.maxThresholdIterations);
    g.centers = groupCenters(mcs, g.groups);
    return g;
  };
  auto grouped = engine.run(job2, std::span<const std::uint32_t>(ids));
  result.jobs.push_back(grouped.stats);
  result.phases.push_back({"grouping", grouped.stats.totalMs});
  auto& grouping = grouped.records.front().second;

  // Job 3: one assignment pass against the group centers.
  auto final = kmeans::runAssignmentJob(engine, vectors, grouping.centers, exec, "bkc-assign");
  result.jobs.push_back(final.stats);
  result.phases.push_back({"assignment", final.stats.totalMs});

  result.labels = std::move(final.labels);
  result.centroids.resize(config.k);
  for (std::size_t i = 0; i < config.k; ++i) {
    if (final.clusters[i].count > 0) {
      result.centroids[i] = centroidFromSum(final.clusters[i].sum, final.clusters[i].count);
    } else {
      result.centroids[i] = grouping.centers[i];
      result.centroids[i].memberCount = 0;
    }
  }
  result.iterations = 1;
  result.objectiveHistory.push_back(kmeans::objective(engine, vectors, result.labels, result.centroids));
  result.rss = rss(vectors, result.labels, result.centroids);
  result.wallMs = minimr::detail::millisSince(t0);

  const auto& g = grouping.groups;
  result.info["big_k"] = static_cast<double>(config.bigK);
  result.info["initial_threshold"] = grouping.s0;
  result.info["final_threshold"] = g.threshold;
  result.info["threshold_iterations"] = static_cast<double>(g.thresholdIterations);
  result.info["groups_before_merge"] = static_cast<double>(g.groupsBeforeMerge);
  result.info["forced_merges"] = static_cast<double>(g.forcedMerges);
  result.info["fallback_dropped"] = g.fallbackDropped ? 1.0 : 0.0;
  return result;
}

ClusteringResult runBkc(std::span<const SparseVector> vectors, const BkcConfig& config,
                        std::size_t workers) {
  minimr::Engine engine(workers);
  ExecutionConfig exec;
  exec.workers = workers;
  return runBkc(engine, vectors, config, exec);
}

}  // namespace docclust::bkc
