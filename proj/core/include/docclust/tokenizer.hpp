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

#include <string>
#include <string_view>
#include <vector>

namespace docclust {

/// Lowercases ASCII letters, splits on anything that is not [a-z0-9], drops
/// tokens shorter than two characters and drops built-in English stopwords.
std::vector<std::string> tokenize(std::string_view text);

bool isStopword(std::string_view token) noexcept;

}  // namespace docclust
