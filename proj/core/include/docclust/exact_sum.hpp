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

// Order-independent summation of doubles.
//
// Each addend is rounded once onto a fixed grid of 2^-96 and accumulated in a
// 128-bit integer, so sums are exactly associative: any grouping or order of
// the same addends produces the same bits. This is what lets a combiner, a
// different mapper count or a different worker count reproduce a centroid
// bit for bit. Addends need |x| < 2^24; with unit-norm vectors a single sum
// can absorb about 2^30 addends before the 128-bit range is at risk.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "docclust/sparse_vector.hpp"

namespace docclust {

__extension__ typedef __int128 Fixed;

Fixed toFixed(double x);
double fromFixed(Fixed f) noexcept;

/// Scalar exact accumulator.
class FixedSum {
 public:
  FixedSum() = default;

  void add(double x) { acc_ += toFixed(x); }
  FixedSum& operator+=(const FixedSum& other) noexcept {
    acc_ += other.acc_;
    return *this;
  }
  double value() const noexcept { return fromFixed(acc_); }
  Fixed raw() const noexcept { return acc_; }

  friend bool operator==(const FixedSum&, const FixedSum&) = default;

 private:
  Fixed acc_ = 0;
};

/// Sparse exact accumulator over term dimensions, kept sorted by dimension.
class SparseSum {
 public:
  using Entry = std::pair<Dim, Fixed>;

  SparseSum() = default;
  explicit SparseSum(const SparseVector& v);

  /// Exact sum of `parts`.
  static SparseSum merge(std::span<const SparseSum> parts);
  static SparseSum merge(std::span<const SparseSum* const> parts);
  /// Exact sum of every vector in `vectors`.
  static SparseSum of(std::span<const SparseVector* const> vectors);

  void add(const SparseSum& other);

  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  /// Rounded sum, each component divided by `divisor`. Zero components are
  /// dropped.
  std::vector<Term> toTerms(double divisor = 1.0) const;

  friend bool operator==(const SparseSum&, const SparseSum&) = default;

 private:
  static std::vector<Entry> compact(std::vector<Entry> entries);

  std::vector<Entry> entries_;
};

}  // namespace docclust
