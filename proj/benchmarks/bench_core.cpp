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

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "docclust/buckshot.hpp"
#include "docclust/hac.hpp"
#include "docclust/kmeans.hpp"
#include "docclust/vecspace.hpp"

namespace {

using namespace docclust;

std::vector<SparseVector> randomVectors(std::size_t n, std::size_t dims, std::size_t nnz,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<SparseVector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Term> terms;
    for (std::size_t j = 0; j < nnz; ++j) terms.push_back(Term{static_cast<Dim>(rng() % dims), 0.1 + unit(rng)});
    out.push_back(makeSparse(i, std::move(terms)));
  }
  return out;
}

std::vector<Centroid> firstCentroids(const std::vector<SparseVector>& vs, std::size_t k) {
  std::vector<Centroid> cs;
  for (std::size_t i = 0; i < k; ++i) cs.push_back(centroidAt(vs[i]));
  return cs;
}

void BM_Cosine(benchmark::State& state) {
  const auto vs = randomVectors(2, 50000, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(cosine(vs[0], vs[1]));
}
BENCHMARK(BM_Cosine)->Arg(50)->Arg(200)->Arg(1000);

void BM_NearestCenter(benchmark::State& state) {
  const auto vs = randomVectors(2000, 20000, 80, 2);
  const auto cs = firstCentroids(vs, static_cast<std::size_t>(state.range(0)));
  const NearestCenter index{std::span<const Centroid>(cs)};
  std::vector<double> scratch;
  for (auto _ : state) {
    for (const auto& v : vs) benchmark::DoNotOptimize(index.nearest(v, scratch));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(vs.size()));
}
BENCHMARK(BM_NearestCenter)->Arg(20)->Arg(50)->Arg(400);

void BM_AssignmentJob(benchmark::State& state) {
  const auto vs = randomVectors(20000, 20000, 80, 3);
  const auto cs = firstCentroids(vs, 50);
  const auto workers = static_cast<std::size_t>(state.range(0));
  minimr::Engine engine(workers);
  ExecutionConfig exec;
  exec.workers = workers;
  exec.useCombiner = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(kmeans::runAssignmentJob(engine, vs, cs, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(vs.size()));
}
BENCHMARK(BM_AssignmentJob)->Args({1, 1})->Args({4, 1})->Args({4, 0})->Unit(benchmark::kMillisecond);

void BM_HacSingleLink(benchmark::State& state) {
  const auto vs = randomVectors(static_cast<std::size_t>(state.range(0)), 20000, 80, 4);
  for (auto _ : state) benchmark::DoNotOptimize(buckshot::hacSingleLink(vs, 20));
}
BENCHMARK(BM_HacSingleLink)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
