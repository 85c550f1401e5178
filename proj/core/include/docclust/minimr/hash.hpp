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
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

namespace docclust::minimr {

/// Stable 64-bit key hashing. Unlike std::hash these values are fixed across
/// runs, builds and platforms, so reducer placement is reproducible.
std::uint64_t mix64(std::uint64_t x) noexcept;
std::uint64_t stableHash(std::string_view bytes) noexcept;

template <class T>
  requires std::is_integral_v<T>
std::uint64_t stableHash(T value) noexcept {
  return mix64(static_cast<std::uint64_t>(value));
}

inline std::uint64_t stableHash(const std::string& s) noexcept {
  return stableHash(std::string_view(s));
}

template <class A, class B>
std::uint64_t stableHash(const std::pair<A, B>& p) noexcept {
  return mix64(stableHash(p.first) * 0x9E3779B97F4A7C15ULL ^ stableHash(p.second));
}

/// Maps a key to a reducer in [0, numReducers). numReducers must be >= 1.
template <class K>
std::size_t partitionByHash(const K& key, std::size_t numReducers) noexcept {
  if (numReducers <= 1) return 0;
  return static_cast<std::size_t>(stableHash(key) % numReducers);
}

}  // namespace docclust::minimr
