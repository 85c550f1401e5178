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

#include "docclust/exact_sum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace docclust {

namespace {
constexpr int kFracBits = 96;
constexpr double kMaxAbs = 16777216.0;  // 2^24
}  // namespace

Fixed toFixed(double x) {
  if (!(std::fabs(x) < kMaxAbs)) {
    throw std::domain_error("fixed-point addend out of range");
  }
  // Scaling by a power of two is exact; rounding happens once, here.
  const double scaled = std::nearbyint(std::ldexp(x, kFracBits));
  return static_cast<Fixed>(scaled);
}

double fromFixed(Fixed f) noexcept { return std::ldexp(static_cast<double>(f), -kFracBits); }

SparseSum::SparseSum(const SparseVector& v) {
  entries_.reserve(v.terms.size());
  for (const auto& t : v.terms) {
    const Fixed f = toFixed(t.weight);
    if (f != 0) entries_.emplace_back(t.dim, f);
  }
}

std::vector<SparseSum::Entry> SparseSum::compact(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  std::vector<Entry> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
    } else {
      out.push_back(e);
    }
  }
  std::erase_if(out, [](const Entry& e) { return e.second == 0; });
  return out;
}

SparseSum SparseSum::merge(std::span<const SparseSum> parts) {
  std::vector<const SparseSum*> ptrs;
  ptrs.reserve(parts.size());
  for (const auto& p : parts) ptrs.push_back(&p);
  return merge(std::span<const SparseSum* const>(ptrs));
}

SparseSum SparseSum::merge(std::span<const SparseSum* const> parts) {
  if (parts.size() == 1) return *parts.front();
  std::size_t total = 0;
  for (const auto* p : parts) total += p->entries_.size();
  std::vector<Entry> all;
  all.reserve(total);
  for (const auto* p : parts) all.insert(all.end(), p->entries_.begin(), p->entries_.end());
  SparseSum out;
  out.entries_ = compact(std::move(all));
  return out;
}

SparseSum SparseSum::of(std::span<const SparseVector* const> vectors) {
  std::size_t total = 0;
  for (const auto* v : vectors) total += v->terms.size();
  std::vector<Entry> all;
  all.reserve(total);
  for (const auto* v : vectors) {
    for (const auto& t : v->terms) all.emplace_back(t.dim, toFixed(t.weight));
  }
  SparseSum out;
  out.entries_ = compact(std::move(all));
  return out;
}

void SparseSum::add(const SparseSum& other) {
  std::vector<Entry> merged;
  merged.reserve(entries_.size() + other.entries_.size());
  std::size_t i = 0, j = 0;
  while (i < entries_.size() || j < other.entries_.size()) {
    if (j == other.entries_.size() ||
        (i < entries_.size() && entries_[i].first < other.entries_[j].first)) {
      merged.push_back(entries_[i++]);
    } else if (i == entries_.size() || other.entries_[j].first < entries_[i].first) {
      merged.push_back(other.entries_[j++]);
    } else {
      const Fixed s = entries_[i].second + other.entries_[j].second;
      if (s != 0) merged.emplace_back(entries_[i].first, s);
      ++i;
      ++j;
    }
  }
  entries_ = std::move(merged);
}

std::vector<Term> SparseSum::toTerms(double divisor) const {
  std::vector<Term> out;
  out.reserve(entries_.size());
  for (const auto& [dim, f] : entries_) {
    const double w = fromFixed(f) / divisor;
    if (w != 0.0) out.push_back(Term{dim, w});
  }
  return out;
}

}  // namespace docclust
