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

#include "docclust/minimr/engine.hpp"

#include <algorithm>

namespace docclust::minimr {

std::vector<InputSplit> makeSplits(std::size_t n, std::size_t numMappers) {
  std::vector<InputSplit> splits;
  if (n == 0 || numMappers == 0) return splits;
  const std::size_t size = (n + numMappers - 1) / numMappers;
  for (std::size_t begin = 0, index = 0; begin < n; begin += size, ++index) {
    splits.push_back(InputSplit{index, begin, std::min(n, begin + size)});
  }
  return splits;
}

}  // namespace docclust::minimr
