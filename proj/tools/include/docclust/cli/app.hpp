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

// Command-line front end: vectorize, cluster, bench, scale and synth.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "docclust/clustering.hpp"
#include "docclust/sparse_vector.hpp"

namespace docclust::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;

/// Everything needed to rerun a command. Serialized into every report.
struct RunConfig {
  std::string command;
  std::string algo = "kmeans";
  std::size_t k = 20;
  std::size_t bigK = 0;         // 0: 5k, capped at n
  std::size_t partitions = 0;   // 0: automatic
  std::size_t assignIters = 2;
  std::size_t workers = 1;
  std::uint64_t seed = 42;
  double eps = 1e-4;
  std::size_t maxIters = 50;
  std::size_t minDf = 3;
  std::string input;
  std::string output;
  std::string labels;
  std::string format = "json";

  void validate() const;  // throws std::invalid_argument
};

Json toJson(const RunConfig& config);
/// Accepts a bare config object or a report containing one under "config".
RunConfig runConfigFromJson(const Json& json);

std::size_t defaultWorkers();

/// Resolved big-K for `n` documents.
std::size_t resolveBigK(const RunConfig& config, std::size_t n);

/// Runs the configured algorithm on `vectors`.
ClusteringResult runAlgorithm(const RunConfig& config, std::span<const SparseVector> vectors);

/// Report for one clustering run; the echoed config carries resolved values.
Json clusterReport(const RunConfig& config, const ClusteringResult& result,
                   std::span<const SparseVector> vectors, std::size_t numDims);

// ---- bench ---------------------------------------------------------------

struct BenchRow {
  std::string algo;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t workers = 1;
  std::uint64_t seed = 0;
  double rss = 0.0;
  double wallMs = 0.0;
  std::size_t iters = 0;
};

struct BenchMatrix {
  std::vector<std::string> algos;
  std::vector<std::size_t> ks;
  std::vector<std::size_t> workers;
  std::vector<std::uint64_t> seeds;
  RunConfig base;  // per-algorithm parameters shared by every cell
};

inline constexpr const char* kBenchCsvHeader = "algo,k,workers,seed,rss,wall_ms,iters";

std::vector<BenchRow> runBench(const BenchMatrix& matrix, std::span<const SparseVector> vectors);
std::string benchCsv(std::span<const BenchRow> rows);
/// Rows, per-cell medians and derived columns:
///   rssLossPct = 100 (rss - rss_kmeans) / rss_kmeans
///   timeImprovementPct = 100 (t_kmeans - t) / t_kmeans
///   speedup = t(1 worker) / t(w)
/// Derived columns need the K-Means cell with the same k and workers (or
/// the same cell at 1 worker); without K-Means a warning is recorded.
Json benchJson(const BenchMatrix& matrix, std::span<const BenchRow> rows);

/// Full command-line entry point.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace docclust::cli
