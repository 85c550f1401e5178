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

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "docclust/minimr/engine.hpp"
#include "docclust/minimr/hash.hpp"
#include "docclust/minimr/worker_pool.hpp"

namespace docclust::minimr {
namespace {

using WordCount = JobSpec<std::string, std::string, int, int>;

WordCount wordCountJob(bool withCombiner) {
  WordCount job;
  job.name = "wordcount";
  job.numMappers = 3;
  job.numReducers = 2;
  job.map = [](const std::string& line, Emitter<std::string, int>& out) {
    std::istringstream in(line);
    std::string w;
    while (in >> w) out.emit(w, 1);
  };
  auto sum = [](const std::string&, std::span<const int> values) {
    return std::accumulate(values.begin(), values.end(), 0);
  };
  if (withCombiner) job.combine = sum;
  job.reduce = sum;
  return job;
}

TEST(Splits, PartitionInputInOrder) {
  for (std::size_t n : {0u, 1u, 7u, 16u, 100u, 1001u}) {
    for (std::size_t m : {1u, 3u, 16u, 200u}) {
      const auto splits = makeSplits(n, m);
      std::size_t next = 0;
      for (std::size_t i = 0; i < splits.size(); ++i) {
        EXPECT_EQ(splits[i].index, i);
        EXPECT_EQ(splits[i].begin, next);
        EXPECT_GT(splits[i].size(), 0u);
        EXPECT_LE(splits[i].size(), (n + m - 1) / m);
        next = splits[i].end;
      }
      EXPECT_EQ(next, n);
      EXPECT_LE(splits.size(), m);
    }
  }
}

TEST(Splits, ZeroMappersGiveNoSplits) { EXPECT_TRUE(makeSplits(10, 0).empty()); }

TEST(Engine, RejectsZeroMappersOrReducers) {
  JobSpec<int, int, int, int> job;
  job.map = [](const int& x, Emitter<int, int>& out) { out.emit(x, x); };
  job.reduce = [](const int&, std::span<const int> v) { return v.front(); };
  std::vector<int> input{1, 2};
  job.numMappers = 0;
  EXPECT_THROW(runJob(job, std::span<const int>(input), 1), std::invalid_argument);
  job.numMappers = 1;
  job.numReducers = 0;
  EXPECT_THROW(runJob(job, std::span<const int>(input), 1), std::invalid_argument);
}

TEST(PartitionByHash, SingleReducerIsZero) {
  for (int i = 0; i < 100; ++i) EXPECT_EQ(partitionByHash(i, 1), 0u);
  EXPECT_EQ(partitionByHash(std::string("anything"), 1), 0u);
}

TEST(PartitionByHash, StableForSameKey) {
  EXPECT_EQ(partitionByHash(std::string("cat"), 8), partitionByHash(std::string("cat"), 8));
  EXPECT_EQ(partitionByHash(123456789ULL, 8), partitionByHash(123456789ULL, 8));
}

TEST(PartitionByHash, SpreadsRandomKeys) {
  std::mt19937_64 rng(7);
  std::vector<std::size_t> buckets(10, 0);
  for (int i = 0; i < 10000; ++i) ++buckets[partitionByHash(rng(), 10)];
  EXPECT_LE(*std::max_element(buckets.begin(), buckets.end()), 4000u);
  // Much tighter in practice.
  EXPECT_LE(*std::max_element(buckets.begin(), buckets.end()), 1200u);

  std::vector<std::size_t> words(10, 0);
  for (int i = 0; i < 1000; ++i) ++words[partitionByHash("w" + std::to_string(i), 10)];
  EXPECT_LE(*std::max_element(words.begin(), words.end()), 400u);
}

TEST(WorkerPool, RunsEveryIndexOnce) {
  for (std::size_t w : {1u, 2u, 4u}) {
    WorkerPool pool(w);
    std::vector<std::atomic<int>> hits(257);
    pool.parallelFor(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
    // Reusable across batches.
    pool.parallelFor(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) EXPECT_EQ(h.load(), 2);
  }
}

TEST(WorkerPool, RethrowsLowestFailingIndex) {
  WorkerPool pool(4);
  try {
    pool.parallelFor(64, [](std::size_t i) {
      if (i == 9 || i == 40) throw std::runtime_error("task " + std::to_string(i));
    });
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "task 9");
  }
}

TEST(Engine, RejectsZeroWorkers) {
  EXPECT_THROW(Engine(0), std::invalid_argument);
  WordCount job = wordCountJob(false);
  std::vector<std::string> input{"a"};
  EXPECT_THROW(runJob(job, std::span<const std::string>(input), 0), std::invalid_argument);
}

TEST(Engine, WordCount) {
  std::vector<std::string> input{"a b", "b"};
  for (bool combiner : {false, true}) {
    for (std::size_t w : {1u, 4u}) {
      auto out = runJob(wordCountJob(combiner), std::span<const std::string>(input), w);
      ASSERT_EQ(out.records.size(), 2u);
      EXPECT_EQ(out.records[0], (std::pair<std::string, int>{"a", 1}));
      EXPECT_EQ(out.records[1], (std::pair<std::string, int>{"b", 2}));
    }
  }
}

TEST(Engine, IdentityJobRekeysInput) {
  std::vector<int> input(100);
  std::iota(input.begin(), input.end(), 0);
  std::shuffle(input.begin(), input.end(), std::mt19937(3));
  JobSpec<int, int, int, int> job;
  job.numMappers = 7;
  job.numReducers = 3;
  job.map = [](const int& x, Emitter<int, int>& out) { out.emit(x, x); };
  job.reduce = [](const int&, std::span<const int> v) { return v.front(); };
  for (std::size_t w : {1u, 2u, 4u, 8u}) {
    auto out = runJob(job, std::span<const int>(input), w);
    ASSERT_EQ(out.records.size(), input.size());
    for (int i = 0; i < 100; ++i) {
      EXPECT_EQ(out.records[i].first, i);
      EXPECT_EQ(out.records[i].second, i);
    }
  }
}

// Sequential reference: map everything, group by key, values in (record, emit) order.
std::map<int, std::vector<double>> sequentialGroups(const std::vector<double>& input) {
  std::map<int, std::vector<double>> groups;
  for (std::size_t r = 0; r < input.size(); ++r) {
    groups[static_cast<int>(r % 13)].push_back(input[r]);
    groups[static_cast<int>(r % 5)].push_back(-input[r]);
  }
  return groups;
}

TEST(Engine, MatchesSequentialReferenceForAnyWorkerCount) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal(0.0, 1e3);
  std::vector<double> input(5000);
  for (auto& x : input) x = normal(rng);

  // Reduce keeps the full ordered value list, so order differences show up.
  JobSpec<double, int, double, std::vector<double>> job;
  job.numMappers = 16;
  job.numReducers = 4;
  job.map = [&](const double& x, Emitter<int, double>& out) {
    const auto r = out.record();
    out.emit(static_cast<int>(r % 13), x);
    out.emit(static_cast<int>(r % 5), -x);
  };
  job.reduce = [](const int&, std::span<const double> v) { return std::vector<double>(v.begin(), v.end()); };

  const auto reference = sequentialGroups(input);
  for (std::size_t w : {1u, 2u, 4u, 8u}) {
    auto out = runJob(job, std::span<const double>(input), w);
    ASSERT_EQ(out.records.size(), reference.size());
    std::size_t i = 0;
    for (const auto& [key, values] : reference) {
      EXPECT_EQ(out.records[i].first, key);
      EXPECT_EQ(out.records[i].second, values);
      ++i;
    }
    EXPECT_EQ(out.stats.inputRecords, input.size());
    EXPECT_EQ(out.stats.emitted, 2 * input.size());
    EXPECT_EQ(out.stats.groups, reference.size());
  }
}

TEST(Engine, EveryRecordReachesExactlyOneMapper) {
  std::vector<int> input(1234);
  std::iota(input.begin(), input.end(), 0);
  JobSpec<int, int, int, std::vector<int>> job;
  job.numMappers = 16;
  job.map = [](const int& x, Emitter<int, int>& out) { out.emit(0, x); };
  job.reduce = [](const int&, std::span<const int> v) { return std::vector<int>(v.begin(), v.end()); };
  auto out = runJob(job, std::span<const int>(input), 4);
  ASSERT_EQ(out.records.size(), 1u);
  EXPECT_EQ(out.records[0].second, input);
  EXPECT_EQ(out.stats.mapTasks, 16u);
}

TEST(Engine, CombinerReducesShuffleNotResult) {
  std::vector<std::string> input(200, "x y x");
  Engine engine(2);
  RunOptions off;
  off.useCombiner = false;
  auto with = engine.run(wordCountJob(true), std::span<const std::string>(input));
  auto without = engine.run(wordCountJob(true), std::span<const std::string>(input), off);
  EXPECT_EQ(with.records, without.records);
  EXPECT_LT(with.stats.shuffled, without.stats.shuffled);
  EXPECT_EQ(without.stats.shuffled, 600u);
}

TEST(Engine, MapFailureNamesRecord) {
  std::vector<int> input(50, 1);
  input[37] = -1;
  JobSpec<int, int, int, int> job;
  job.name = "fragile";
  job.numMappers = 4;
  job.map = [](const int& x, Emitter<int, int>& out) {
    if (x < 0) throw std::domain_error("negative input");
    out.emit(0, x);
  };
  job.reduce = [](const int&, std::span<const int> v) { return static_cast<int>(v.size()); };
  for (std::size_t w : {1u, 4u}) {
    try {
      runJob(job, std::span<const int>(input), w);
      FAIL() << "expected JobError";
    } catch (const JobError& e) {
      EXPECT_EQ(e.job(), "fragile");
      EXPECT_EQ(e.phase(), "map");
      EXPECT_EQ(e.record(), 37u);
      EXPECT_NE(std::string(e.what()).find("negative input"), std::string::npos);
    }
  }
}

TEST(Engine, ReduceFailureNamesFirstRecordOfGroup) {
  std::vector<int> input{5, 6, 7, 8};
  JobSpec<int, int, int, int> job;
  job.numMappers = 2;
  job.map = [](const int& x, Emitter<int, int>& out) { out.emit(x % 2, x); };
  job.reduce = [](const int& key, std::span<const int> v) -> int {
    if (key == 1) throw std::runtime_error("odd group");
    return static_cast<int>(v.size());
  };
  try {
    runJob(job, std::span<const int>(input), 2);
    FAIL() << "expected JobError";
  } catch (const JobError& e) {
    EXPECT_EQ(e.phase(), "reduce");
    EXPECT_EQ(e.record(), 0u);  // value 5 came from record 0
  }
}

TEST(Engine, EmptyInput) {
  std::vector<std::string> input;
  auto out = runJob(wordCountJob(true), std::span<const std::string>(input), 3);
  EXPECT_TRUE(out.records.empty());
  EXPECT_EQ(out.stats.inputRecords, 0u);
}

}  // namespace
}  // namespace docclust::minimr
