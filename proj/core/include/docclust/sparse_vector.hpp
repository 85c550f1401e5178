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
#include <span>
#include <string>
#include <vector>

namespace docclust {

using DocId = std::uint64_t;
using Dim = std::uint32_t;

struct Term {
  Dim dim = 0;
  double weight = 0.0;

  friend bool operator==(const Term&, const Term&) = default;
};

/// A document (or any sparse direction) in term space.
///
/// Terms are sorted by strictly increasing dimension and never hold an
/// explicit zero. Document vectors are L2-normalized; a vector with no terms
/// is the flagged zero vector (document emptied by vocabulary pruning).
struct SparseVector {
  DocId docId = 0;
  std::vector<Term> terms;

  bool isZero() const noexcept { return terms.empty(); }
  std::size_t nnz() const noexcept { return terms.size(); }
  double squaredNorm() const noexcept;
  double norm() const noexcept;

  /// Throws std::invalid_argument when the term list breaks the ordering or
  /// non-zero invariants.
  void validate() const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

/// Scales `terms` to unit L2 norm in place. Zero input stays zero.
void normalizeInPlace(std::vector<Term>& terms);

/// Builds a vector from unsorted (dim, weight) pairs: sorts, sums duplicates
/// and drops zeros. Does not normalize.
SparseVector makeSparse(DocId id, std::vector<Term> terms);

/// Largest dimension index + 1 over a collection.
std::size_t dimensionCount(std::span<const SparseVector> vectors);

}  // namespace docclust
