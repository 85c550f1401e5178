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

#include "docclust/tokenizer.hpp"

#include <algorithm>
#include <array>

namespace docclust {

namespace {

// Sorted; looked up by binary search.
constexpr std::array<std::string_view, 153> kStopwords = {
    "about",   "above",   "after",   "again",    "against", "all",     "am",      "an",
    "and",     "any",     "are",     "aren",     "as",      "at",      "be",      "because",
    "been",    "before",  "being",   "below",    "between", "both",    "but",     "by",
    "can",     "could",   "couldn",  "did",      "didn",    "do",      "does",    "doesn",
    "doing",   "don",     "down",    "during",   "each",    "few",     "for",     "from",
    "further", "had",     "hadn",    "has",      "hasn",    "have",    "haven",   "having",
    "he",      "her",     "here",    "hers",     "herself", "him",     "himself", "his",
    "how",     "if",      "in",      "into",     "is",      "isn",     "it",      "its",
    "itself",  "just",    "ll",      "me",       "more",    "most",    "must",    "mustn",
    "my",      "myself",  "no",      "nor",      "not",     "now",     "of",      "off",
    "on",      "once",    "only",    "or",       "other",   "our",     "ours",    "ourselves",
    "out",     "over",    "own",     "re",       "same",    "she",     "should",  "shouldn",
    "so",      "some",    "such",    "than",     "that",    "the",     "their",   "theirs",
    "them",    "themselves", "then", "there",    "these",   "they",    "this",    "those",
    "through", "to",      "too",     "under",    "until",   "up",      "ve",      "very",
    "was",     "wasn",    "we",      "were",     "weren",   "what",    "when",    "where",
    "which",   "while",   "who",     "whom",     "why",     "will",    "with",    "won",
    "would",   "wouldn",  "you",     "your",     "yours",   "yourself", "yourselves", "also",
    "may",     "might",   "shall",   "us",       "per",     "yet",     "upon",    "whether",
    "within",
};

const std::array<std::string_view, kStopwords.size()>& sortedStopwords() {
  static const auto sorted = [] {
    auto copy = kStopwords;
    std::sort(copy.begin(), copy.end());
    return copy;
  }();
  return sorted;
}

bool isTokenChar(char c) noexcept { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }

char lower(char c) noexcept { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace

bool isStopword(std::string_view token) noexcept {
  const auto& words = sortedStopwords();
  return std::binary_search(words.begin(), words.end(), token);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= 2 && !isStopword(current)) tokens.push_back(current);
    current.clear();
  };
  for (char raw : text) {
    const char c = lower(raw);
    if (isTokenChar(c)) {
      current.push_back(c);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

}  // namespace docclust
