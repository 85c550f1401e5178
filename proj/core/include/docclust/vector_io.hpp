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
#include <filesystem>
#include <span>
#include <vector>

#include "docclust/corpus.hpp"
#include "docclust/sparse_vector.hpp"

namespace docclust {

// Vector file, little-endian:
//   "TCV1" | numDocs u64 | numDims u64
//   per record: docId u64 | nnz u32 | nnz x (dim u32, weight f64)

struct VectorFile {
  std::size_t numDims = 0;
  std::vector<SparseVector> vectors;
};

void writeVectors(const std::filesystem::path& path, std::span<const SparseVector> vectors,
                  std::size_t numDims);
/// Throws DataError naming the failing record and byte offset.
VectorFile readVectors(const std::filesystem::path& path);

/// UTF-8 lines "term<TAB>index<TAB>docFreq".
void writeVocabulary(const std::filesystem::path& path, const Vocabulary& vocabulary);
Vocabulary readVocabulary(const std::filesystem::path& path);

}  // namespace docclust
