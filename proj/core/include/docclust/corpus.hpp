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
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "docclust/sparse_vector.hpp"

namespace docclust {

struct Document {
  DocId docId = 0;
  std::string sourcePath;  // relative to the corpus root, '/' separated
  std::vector<std::string> tokens;
};

struct IngestResult {
  std::vector<Document> documents;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;
};

/// Reads every regular file below `root` (20_newsgroups layout: one directory
/// per group, one file per posting). docIds follow sorted relative-path order.
/// Unreadable files are skipped and reported; an empty or missing root throws
/// DataError.
IngestResult ingestDirectory(const std::filesystem::path& root);

/// Retained terms with dense indices [0, size()) in lexicographic order.
struct Vocabulary {
  std::unordered_map<std::string, Dim> termToIndex;
  std::vector<std::string> terms;  // index -> term
  std::vector<std::uint32_t> docFreq;
  std::size_t numDocs = 0;

  std::size_t size() const noexcept { return terms.size(); }
  /// Returns -1 when the term is not in the vocabulary.
  std::int64_t indexOf(const std::string& term) const;
};

inline constexpr std::size_t kDefaultMinDf = 3;
inline constexpr double kIdfFloor = 0.1;

struct VectorizedCorpus {
  Vocabulary vocabulary;
  std::vector<SparseVector> vectors;
  std::size_t zeroVectors = 0;  // documents emptied by pruning
};

/// ltc tf-idf: (1 + ln tf) * max(ln(N / df), 0.1), L2-normalized. Terms with
/// df < minDf are dropped. Throws DataError when nothing survives pruning.
VectorizedCorpus buildVectors(std::span<const Document> docs, std::size_t minDf = kDefaultMinDf);

/// Concatenates `factor` copies of `vectors`. Copy 0 is the input unchanged;
/// later copies get fresh docIds and every weight scaled by a seeded factor
/// in [0.95, 1.05] before re-normalization.
std::vector<SparseVector> scaleCorpus(std::span<const SparseVector> vectors, std::size_t factor,
                                      std::uint64_t seed);

}  // namespace docclust
