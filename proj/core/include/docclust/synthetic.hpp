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

// Seeded stand-in for the 20 Newsgroups collection: same directory layout
// (one directory per group, numeric file names), header lines, stopwords and
// Zipfian word use. Each group draws from its own vocabulary, a vocabulary
// shared with its top-level hierarchy (comp, rec, sci, ...), and a large
// background vocabulary shared by all groups.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "docclust/corpus.hpp"

namespace docclust::synthetic {

struct NewsgroupsConfig {
  std::size_t docsPerGroup = 1000;
  std::size_t groups = 20;  // at most 20
  std::uint64_t seed = 42;
  double medianLength = 120.0;  // words per body, lognormal
  double groupShare = 0.28;     // body words drawn from the group vocabulary
  double hierarchyShare = 0.10;
  double crossGroupShare = 0.05;
  double stopwordShare = 0.30;  // the rest is background vocabulary
};

struct Posting {
  std::string group;
  std::string relativePath;  // "<group>/<number>"
  std::string text;
};

/// The 20 group names in their conventional order.
std::span<const std::string> groupNames();

/// Postings sorted by relative path, i.e. in ingestDirectory order.
std::vector<Posting> generateNewsgroups(const NewsgroupsConfig& config);

/// Writes postings below `root`, creating group directories.
void writePostings(const std::filesystem::path& root, std::span<const Posting> postings);

/// Tokenized documents with docIds in posting order, as ingestDirectory
/// would produce after writePostings.
std::vector<Document> toDocuments(std::span<const Posting> postings);

/// Group index of each posting.
std::vector<std::uint32_t> groupLabels(std::span<const Posting> postings);

}  // namespace docclust::synthetic
