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

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "docclust/minimr/engine.hpp"
#include "docclust/vecspace.hpp"

namespace docclust {

/// How jobs are laid out on the engine. Mapper count is fixed independently
/// of the worker count so split boundaries, and therefore every result, are
/// the same for any number of workers.
struct ExecutionConfig {
  std::size_t workers = 1;
  std::size_t mappers = 16;
  std::size_t reducers = 4;
  bool useCombiner = true;
};

struct PhaseTiming {
  std::string name;
  double ms = 0.0;
};

struct ClusteringResult {
  std::string algorithm;
  std::vector<Label> labels;  // one per input vector, in input order
  std::vector<Centroid> centroids;
  double rss = 0.0;
  std::vector<double> objectiveHistory;
  std::size_t iterations = 0;
  double wallMs = 0.0;
  std::size_t workers = 1;
  std::vector<PhaseTiming> phases;
  std::vector<minimr::JobStats> jobs;
  // Algorithm-specific scalars (sample size, thresholds, ...).
  std::map<std::string, double> info;
};

}  // namespace docclust
