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

#include "docclust/vecspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace docclust {

double Centroid::squaredNorm() const noexcept {
  double s = 0.0;
  for (const auto& t : terms) s += t.weight * t.weight;
  return s;
}

double dot(std::span<const Term> a, std::span<const Term> b) noexcept {
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].dim < b[j].dim) {
      ++i;
    } else if (b[j].dim < a[i].dim) {
      ++j;
    } else {
      s += a[i].weight * b[j].weight;
      ++i;
      ++j;
    }
  }
  return s;
}

Centroid centroidFromSum(const SparseSum& sum, std::size_t count) {
  Centroid c;
  c.memberCount = count;
  if (count == 0) return c;
  c.terms = sum.toTerms(static_cast<double>(count));
  normalizeInPlace(c.terms);
  return c;
}

Centroid centroidOf(std::span<const SparseVector* const> members) {
  return centroidFromSum(SparseSum::of(members), members.size());
}

Centroid centroidOf(std::span<const SparseVector> members) {
  std::vector<const SparseVector*> ptrs;
  ptrs.reserve(members.size());
  for (const auto& m : members) ptrs.push_back(&m);
  return centroidOf(std::span<const SparseVector* const>(ptrs));
}

Centroid centroidAt(const SparseVector& v, std::size_t memberCount) {
  return Centroid{v.terms, memberCount};
}

namespace {

void checkLabels(std::size_t n, std::span<const Label> labels, std::size_t k) {
  if (labels.size() != n) {
    throw std::invalid_argument("label count " + std::to_string(labels.size()) +
                                " does not match vector count " + std::to_string(n));
  }
  for (std::size_t d = 0; d < n; ++d) {
    if (labels[d] >= k) {
      throw std::out_of_range("label " + std::to_string(labels[d]) + " of document " +
                              std::to_string(d) + " has no centroid (k=" + std::to_string(k) +
                              ")");
    }
  }
}

double squaredDistance(std::span<const Term> a, std::span<const Term> b) noexcept {
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    double diff;
    if (j == b.size() || (i < a.size() && a[i].dim < b[j].dim)) {
      diff = a[i++].weight;
    } else if (i == a.size() || b[j].dim < a[i].dim) {
      diff = -b[j++].weight;
    } else {
      diff = a[i++].weight - b[j++].weight;
    }
    s += diff * diff;
  }
  return s;
}

}  // namespace

double rss(std::span<const SparseVector> vectors, std::span<const Label> labels,
           std::span<const Centroid> centroids) {
  checkLabels(vectors.size(), labels, centroids.size());
  double s = 0.0;
  for (std::size_t d = 0; d < vectors.size(); ++d) {
    s += squaredDistance(vectors[d].terms, centroids[labels[d]].terms);
  }
  return s;
}

double rssCosineForm(std::span<const SparseVector> vectors, std::span<const Label> labels,
                     std::span<const Centroid> centroids) {
  checkLabels(vectors.size(), labels, centroids.size());
  std::vector<double> norms(centroids.size());
  for (std::size_t i = 0; i < centroids.size(); ++i) norms[i] = centroids[i].squaredNorm();
  double s = 0.0;
  for (std::size_t d = 0; d < vectors.size(); ++d) {
    const auto& c = centroids[labels[d]];
    s += vectors[d].squaredNorm() + norms[labels[d]] - 2.0 * cosine(vectors[d], c);
  }
  return s;
}

double sphericalObjective(std::span<const SparseVector> vectors, std::span<const Label> labels,
                          std::span<const Centroid> centroids) {
  checkLabels(vectors.size(), labels, centroids.size());
  double s = 0.0;
  for (std::size_t d = 0; d < vectors.size(); ++d) {
    s += cosine(vectors[d], centroids[labels[d]]);
  }
  return s;
}

NearestCenter::NearestCenter(std::span<const Centroid> centers) {
  std::vector<std::span<const Term>> views;
  views.reserve(centers.size());
  for (const auto& c : centers) views.emplace_back(c.terms);
  build(views);
}

NearestCenter::NearestCenter(std::span<const SparseVector> centers) {
  std::vector<std::span<const Term>> views;
  views.reserve(centers.size());
  for (const auto& c : centers) views.emplace_back(c.terms);
  build(views);
}

void NearestCenter::build(const std::vector<std::span<const Term>>& centers) {
  count_ = centers.size();
  std::size_t nnz = 0;
  for (const auto& c : centers) {
    nnz += c.size();
    if (!c.empty()) dims_ = std::max<std::size_t>(dims_, c.back().dim + 1);
  }
  // Dense when at least ~1/8 of the matrix would be populated.
  dense_ = count_ > 0 && dims_ > 0 && nnz * 8 >= count_ * dims_;
  if (!dense_) {
    centerTerms_.reserve(count_);
    for (const auto& c : centers) centerTerms_.emplace_back(c.begin(), c.end());
  }
  if (dense_) {
    matrix_.assign(dims_ * count_, 0.0);
    for (std::size_t i = 0; i < count_; ++i) {
      for (const auto& t : centers[i]) matrix_[t.dim * count_ + i] = t.weight;
    }
  } else {
    offsets_.assign(dims_ + 1, 0);
    for (const auto& c : centers) {
      for (const auto& t : c) ++offsets_[t.dim + 1];
    }
    for (std::size_t d = 0; d < dims_; ++d) offsets_[d + 1] += offsets_[d];
    postings_.resize(nnz);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < count_; ++i) {
      for (const auto& t : centers[i]) {
        postings_[cursor[t.dim]++] = {static_cast<Label>(i), t.weight};
      }
    }
  }
}

void NearestCenter::scores(const SparseVector& v, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  if (dense_) {
    for (const auto& t : v.terms) {
      if (t.dim >= dims_) break;
      const double* row = matrix_.data() + static_cast<std::size_t>(t.dim) * count_;
      const double w = t.weight;
      // Zero cells add +0.0 and leave every partial sum unchanged.
      for (std::size_t i = 0; i < count_; ++i) out[i] += w * row[i];
    }
  } else {
    for (const auto& t : v.terms) {
      if (t.dim >= dims_) break;
      for (std::size_t p = offsets_[t.dim]; p < offsets_[t.dim + 1]; ++p) {
        out[postings_[p].first] += t.weight * postings_[p].second;
      }
    }
  }
}

NearestCenter::Match NearestCenter::nearest(const SparseVector& v,
                                            std::vector<double>& scratch) const {
  scratch.resize(count_);
  scores(v, scratch);
  Match best{0, count_ > 0 ? scratch[0] : 0.0};
  for (std::size_t i = 1; i < count_; ++i) {
    if (scratch[i] > best.similarity) best = Match{static_cast<Label>(i), scratch[i]};
  }
  return best;
}

double NearestCenter::similarity(const SparseVector& v, Label center) const noexcept {
  if (!dense_) return dot(v.terms, centerTerms_[center]);
  double s = 0.0;
  for (const auto& t : v.terms) {
    if (t.dim >= dims_) break;
    s += t.weight * matrix_[static_cast<std::size_t>(t.dim) * count_ + center];
  }
  return s;
}

}  // namespace docclust
