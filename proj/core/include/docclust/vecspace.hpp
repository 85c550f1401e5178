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

// Similarity math shared by every algorithm: cosine, spherical centroids and
// the RSS quality metric.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "docclust/exact_sum.hpp"
#include "docclust/sparse_vector.hpp"

namespace docclust {

using Label = std::uint32_t;

/// Spherical centroid: unit-norm direction of the member mean. A centroid
/// with memberCount == 0 is flagged empty; its terms may still hold a seed
/// direction (e.g. after reseeding) or be empty.
struct Centroid {
  std::vector<Term> terms;
  std::size_t memberCount = 0;

  bool isEmpty() const noexcept { return memberCount == 0; }
  bool isZero() const noexcept { return terms.empty(); }
  double squaredNorm() const noexcept;

  friend bool operator==(const Centroid&, const Centroid&) = default;
};

double dot(std::span<const Term> a, std::span<const Term> b) noexcept;

/// Dot product of two unit vectors. Zero vectors give 0.
inline double cosine(const SparseVector& a, const SparseVector& b) noexcept {
  return dot(a.terms, b.terms);
}
inline double cosine(const SparseVector& v, const Centroid& c) noexcept {
  return dot(v.terms, c.terms);
}

/// Normalized (sum / count) of an exact member sum.
Centroid centroidFromSum(const SparseSum& sum, std::size_t count);

/// Mean of `members`, L2-normalized. Empty input gives a flagged-empty zero
/// centroid. Order of members does not matter.
Centroid centroidOf(std::span<const SparseVector> members);
Centroid centroidOf(std::span<const SparseVector* const> members);

/// Centroid pointing exactly at `v` with one member.
Centroid centroidAt(const SparseVector& v, std::size_t memberCount = 1);

/// Sum over documents of ||v_d - c_label(d)||^2, computed term by term.
/// Throws std::out_of_range for a label without a centroid.
double rss(std::span<const SparseVector> vectors, std::span<const Label> labels,
           std::span<const Centroid> centroids);

/// Same quantity via ||v||^2 + ||c||^2 - 2 v.c (2 - 2 cos for unit vectors).
double rssCosineForm(std::span<const SparseVector> vectors, std::span<const Label> labels,
                     std::span<const Centroid> centroids);

/// Sum over documents of cos(v_d, c_label(d)).
double sphericalObjective(std::span<const SparseVector> vectors, std::span<const Label> labels,
                          std::span<const Centroid> centroids);

/// Best-center lookup for a fixed set of centers.
///
/// Dense centers are laid out dimension-major so a document touches one
/// contiguous row per term; sparse centers use an inverted index. Both
/// accumulate in document term order, so scores equal cosine() bit for bit
/// and do not depend on the layout picked.
class NearestCenter {
 public:
  struct Match {
    Label index = 0;
    double similarity = 0.0;
  };

  NearestCenter(std::span<const Centroid> centers);
  NearestCenter(std::span<const SparseVector> centers);

  std::size_t size() const noexcept { return count_; }
  bool denseLayout() const noexcept { return dense_; }

  /// Scores against every center; `scores` must have size() elements.
  void scores(const SparseVector& v, std::span<double> scores) const;

  /// Argmax cosine; ties go to the lowest center index.
  Match nearest(const SparseVector& v, std::vector<double>& scratch) const;

  double similarity(const SparseVector& v, Label center) const noexcept;

 private:
  void build(const std::vector<std::span<const Term>>& centers);

  std::size_t count_ = 0;
  std::size_t dims_ = 0;
  bool dense_ = false;
  std::vector<double> matrix_;  // dims_ x count_, dense layout
  std::vector<std::size_t> offsets_;  // dims_ + 1, sparse layout
  std::vector<std::pair<Label, double>> postings_;
  std::vector<std::vector<Term>> centerTerms_;
};

}  // namespace docclust
