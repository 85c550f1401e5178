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

// In-process map/combine/reduce engine.
//
// A job maps every input record to zero or more (key, value) pairs, optionally
// folds the values of each key inside a map task with a combiner, shuffles
// pairs to reducers by key hash, and reduces each key group to one output
// record. Output is always sorted by key, so it does not depend on the number
// of workers or reducers. Inside a reduce group, values are ordered by the id
// of the input record that produced them, which keeps floating-point
// accumulation reproducible.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "docclust/minimr/hash.hpp"
#include "docclust/minimr/worker_pool.hpp"

namespace docclust::minimr {

using RecordId = std::uint64_t;

/// Raised when a user function fails. Carries the job name, the phase and
/// the id of the input record at fault (for reduce: the first record of the
/// failing group).
class JobError : public std::runtime_error {
 public:
  JobError(std::string job, std::string phase, RecordId record, const std::string& what)
      : std::runtime_error("job '" + job + "' failed in " + phase + " at record " +
                           std::to_string(record) + ": " + what),
        job_(std::move(job)),
        phase_(std::move(phase)),
        record_(record) {}

  const std::string& job() const noexcept { return job_; }
  const std::string& phase() const noexcept { return phase_; }
  RecordId record() const noexcept { return record_; }

 private:
  std::string job_;
  std::string phase_;
  RecordId record_;
};

/// A contiguous slice [begin, end) of the job input.
struct InputSplit {
  std::size_t index = 0;
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
};

/// Contiguous splits of ceil(n / numMappers) records each. Trailing splits
/// are never empty, so there may be fewer than numMappers of them.
std::vector<InputSplit> makeSplits(std::size_t n, std::size_t numMappers);

/// Intermediate record: key, value and the (record id, emit sequence) tag
/// that fixes its order inside a reduce group.
template <class K, class V>
struct KeyValue {
  K key;
  V value;
  RecordId record = 0;
  std::uint32_t seq = 0;
};

template <class K, class V>
class Emitter {
 public:
  void emit(K key, V value) {
    out_.push_back(KeyValue<K, V>{std::move(key), std::move(value), record_, seq_++});
  }

  RecordId record() const noexcept { return record_; }

 private:
  template <class, class, class, class>
  friend struct JobRunner;

  void begin(RecordId record) {
    record_ = record;
    seq_ = 0;
  }

  std::vector<KeyValue<K, V>> out_;
  RecordId record_ = 0;
  std::uint32_t seq_ = 0;
};

template <class In, class K, class V, class Out>
struct JobSpec {
  std::string name = "job";
  std::function<void(const In&, Emitter<K, V>&)> map;
  // Optional. Must be an associative partial reduction: reduce over combined
  // values must equal reduce over the raw values.
  std::function<V(const K&, std::span<const V>)> combine;
  std::function<Out(const K&, std::span<const V>)> reduce;
  std::size_t numMappers = 1;
  std::size_t numReducers = 1;
};

struct JobStats {
  std::string name;
  std::size_t inputRecords = 0;
  std::size_t mapTasks = 0;
  std::size_t reduceTasks = 0;
  std::size_t emitted = 0;
  std::size_t shuffled = 0;
  std::size_t groups = 0;
  double mapMs = 0.0;
  double shuffleMs = 0.0;
  double reduceMs = 0.0;
  double totalMs = 0.0;
};

template <class K, class Out>
struct JobOutput {
  std::vector<std::pair<K, Out>> records;
  JobStats stats;
};

struct RunOptions {
  bool useCombiner = true;
};

namespace detail {
inline double millisSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}
}  // namespace detail

template <class In, class K, class V, class Out>
struct JobRunner {
  using Pair = KeyValue<K, V>;

  static bool tagLess(const Pair& a, const Pair& b) {
    if (a.key < b.key) return true;
    if (b.key < a.key) return false;
    if (a.record != b.record) return a.record < b.record;
    return a.seq < b.seq;
  }

  static JobOutput<K, Out> run(WorkerPool& pool, const JobSpec<In, K, V, Out>& job,
                               std::span<const In> input, const RunOptions& options) {
    if (!job.map || !job.reduce) {
      throw std::invalid_argument("job '" + job.name + "' needs map and reduce functions");
    }
    if (job.numMappers == 0 || job.numReducers == 0) {
      throw std::invalid_argument("job '" + job.name + "' needs numMappers, numReducers >= 1");
    }

    JobOutput<K, Out> result;
    auto& stats = result.stats;
    stats.name = job.name;
    stats.inputRecords = input.size();
    const auto t0 = std::chrono::steady_clock::now();

    const auto splits = makeSplits(input.size(), job.numMappers);
    const std::size_t R = job.numReducers;
    stats.mapTasks = splits.size();
    stats.reduceTasks = R;

    // Map (+ combine) phase: one task per split, output bucketed by reducer.
    std::vector<std::vector<std::vector<Pair>>> buckets(splits.size(),
                                                        std::vector<std::vector<Pair>>(R));
    std::vector<std::size_t> emittedPerSplit(splits.size(), 0);
    const bool combining = options.useCombiner && static_cast<bool>(job.combine);

    pool.parallelFor(splits.size(), [&](std::size_t s) {
      const auto& split = splits[s];
      Emitter<K, V> emitter;
      for (std::size_t i = split.begin; i < split.end; ++i) {
        emitter.begin(i);
        try {
          job.map(input[i], emitter);
        } catch (const std::exception& e) {
          throw JobError(job.name, "map", i, e.what());
        } catch (...) {
          throw JobError(job.name, "map", i, "unknown error");
        }
      }
      auto& out = emitter.out_;
      emittedPerSplit[s] = out.size();
      if (combining) out = combineSplit(job, std::move(out));
      for (auto& kv : out) {
        const std::size_t r = partitionByHash(kv.key, R);
        buckets[s][r].push_back(std::move(kv));
      }
    });
    for (auto e : emittedPerSplit) stats.emitted += e;
    stats.mapMs = detail::millisSince(t0);

    // Shuffle: each reducer gathers its bucket from every map task in split
    // order, then sorts by (key, record, seq).
    const auto t1 = std::chrono::steady_clock::now();
    std::vector<std::vector<Pair>> partitions(R);
    pool.parallelFor(R, [&](std::size_t r) {
      std::size_t total = 0;
      for (auto& b : buckets) total += b[r].size();
      auto& part = partitions[r];
      part.reserve(total);
      for (auto& b : buckets) {
        for (auto& kv : b[r]) part.push_back(std::move(kv));
        std::vector<Pair>().swap(b[r]);
      }
      std::stable_sort(part.begin(), part.end(), tagLess);
    });
    for (auto& p : partitions) stats.shuffled += p.size();
    stats.shuffleMs = detail::millisSince(t1);

    // Reduce: each reducer owns its key partition.
    const auto t2 = std::chrono::steady_clock::now();
    std::vector<std::vector<std::pair<K, Out>>> reduced(R);
    pool.parallelFor(R, [&](std::size_t r) {
      auto& part = partitions[r];
      std::vector<V> values;
      std::size_t i = 0;
      while (i < part.size()) {
        std::size_t j = i;
        values.clear();
        while (j < part.size() && !(part[i].key < part[j].key)) {
          values.push_back(std::move(part[j].value));
          ++j;
        }
        try {
          reduced[r].emplace_back(part[i].key, job.reduce(part[i].key, std::span<const V>(values)));
        } catch (const std::exception& e) {
          throw JobError(job.name, "reduce", part[i].record, e.what());
        } catch (...) {
          throw JobError(job.name, "reduce", part[i].record, "unknown error");
        }
        i = j;
      }
      std::vector<Pair>().swap(part);
    });
    stats.reduceMs = detail::millisSince(t2);

    // Reducer outputs are each key-sorted; merge them into one key-sorted run.
    std::size_t total = 0;
    for (auto& r : reduced) total += r.size();
    result.records.reserve(total);
    for (auto& r : reduced) {
      for (auto& rec : r) result.records.push_back(std::move(rec));
    }
    if (R > 1) {
      std::stable_sort(result.records.begin(), result.records.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    stats.groups = result.records.size();
    stats.totalMs = detail::millisSince(t0);
    return result;
  }

  // Folds the values of each key within one map task. The combined value
  // inherits the tag of its first input, so reduce-side order still follows
  // record order.
  static std::vector<Pair> combineSplit(const JobSpec<In, K, V, Out>& job, std::vector<Pair> out) {
    std::stable_sort(out.begin(), out.end(), tagLess);
    std::vector<Pair> combined;
    std::vector<V> values;
    std::size_t i = 0;
    while (i < out.size()) {
      std::size_t j = i;
      values.clear();
      while (j < out.size() && !(out[i].key < out[j].key)) {
        values.push_back(std::move(out[j].value));
        ++j;
      }
      try {
        combined.push_back(
            Pair{out[i].key, job.combine(out[i].key, std::span<const V>(values)), out[i].record, 0});
      } catch (const std::exception& e) {
        throw JobError(job.name, "combine", out[i].record, e.what());
      }
      i = j;
    }
    return combined;
  }
};

/// Runs jobs on an owned worker pool.
class Engine {
 public:
  explicit Engine(std::size_t workers) : pool_(checkedWorkers(workers)) {}

  std::size_t workers() const noexcept { return pool_.size(); }
  WorkerPool& pool() noexcept { return pool_; }

  template <class In, class K, class V, class Out>
  JobOutput<K, Out> run(const JobSpec<In, K, V, Out>& job, std::span<const In> input,
                        const RunOptions& options = {}) {
    return JobRunner<In, K, V, Out>::run(pool_, job, input, options);
  }

 private:
  static std::size_t checkedWorkers(std::size_t workers) {
    if (workers == 0) throw std::invalid_argument("workers must be >= 1");
    return workers;
  }

  WorkerPool pool_;
};

/// Convenience wrapper: builds a transient engine with `workers` threads.
template <class In, class K, class V, class Out>
JobOutput<K, Out> runJob(const JobSpec<In, K, V, Out>& job, std::span<const In> input,
                         std::size_t workers, const RunOptions& options = {}) {
  Engine engine(workers);
  return engine.run(job, input, options);
}

}  // namespace docclust::minimr
