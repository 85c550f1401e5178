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

#include "docclust/sparse_vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace docclust {

double SparseVector::squaredNorm() const noexcept {
  double s = 0.0;
  for (const auto& t : terms) s += t.weight * t.weight;
  return s;
}

double SparseVector::norm() const noexcept { return std::sqrt(squaredNorm()); }

void SparseVector::validate() const {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].weight == 0.0 || !std::isfinite(terms[i].weight)) {
      throw std::invalid_argument("doc " + std::to_string(docId) + ": bad weight at term " +
                                  std::to_string(i));
    }
    if (i > 0 && terms[i - 1].dim >= terms[i].dim) {
      throw std::invalid_argument("doc " + std::to_string(docId) +
                                  ": dimensions not strictly increasing at term " +
                                  std::to_string(i));
    }
  }
}

void normalizeInPlace(std::vector<Term>& terms) {
  double s = 0.0;
  for (const auto& t : terms) s += t.weight * t.weight;
  if (s <= 0.0) {
    terms.clear();
    return;
  }
  const double inv = 1.0 / std::sqrt(s);
  for (auto& t : terms) t.weight *= inv;
  std::erase_if(terms, [](const Term& t) { return t.weight == 0.0; });
}

SparseVector makeSparse(DocId id, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.dim < b.dim; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const auto& t : terms) {
    if (!merged.empty() && merged.back().dim == t.dim) {
      merged.back().weight += t.weight;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.weight == 0.0; });
  return SparseVector{id, std::move(merged)};
}

std::size_t dimensionCount(std::span<const SparseVector> vectors) {
  std::size_t d = 0;
  for (const auto& v : vectors) {
    if (!v.terms.empty()) d = std::max<std::size_t>(d, v.terms.back().dim + 1);
  }
  return d;
}

}  // namespace docclust
