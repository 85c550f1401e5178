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

#include "docclust/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "docclust/errors.hpp"
#include "docclust/tokenizer.hpp"

namespace docclust {

namespace fs = std::filesystem;

std::int64_t Vocabulary::indexOf(const std::string& term) const {
  const auto it = termToIndex.find(term);
  return it == termToIndex.end() ? -1 : static_cast<std::int64_t>(it->second);
}

IngestResult ingestDirectory(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw DataError("corpus root '" + root.string() + "' is not a directory");
  }

  std::vector<std::string> paths;
  for (fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec),
       end;
       it != end; it.increment(ec)) {
    if (ec) break;
    if (it->is_regular_file(ec)) {
      paths.push_back(fs::relative(it->path(), root, ec).generic_string());
    }
  }
  if (paths.empty()) {
    throw DataError("corpus root '" + root.string() + "' contains no files");
  }
  std::sort(paths.begin(), paths.end());

  IngestResult result;
  result.documents.reserve(paths.size());
  for (const auto& rel : paths) {
    std::ifstream in(root / rel, std::ios::binary);
    std::ostringstream buffer;
    if (in) buffer << in.rdbuf();
    if (!in || in.bad()) {
      ++result.skipped;
      result.warnings.push_back("skipped unreadable file " + rel);
      continue;
    }
    Document doc;
    doc.docId = result.documents.size();
    doc.sourcePath = rel;
    doc.tokens = tokenize(buffer.str());
    result.documents.push_back(std::move(doc));
  }
  if (result.documents.empty()) {
    throw DataError("no readable files under '" + root.string() + "'");
  }
  return result;
}

VectorizedCorpus buildVectors(std::span<const Document> docs, std::size_t minDf) {
  if (docs.empty()) throw std::invalid_argument("buildVectors needs at least one document");

  // Per-document term counts, then document frequencies.
  std::vector<std::map<std::string, std::uint32_t>> counts(docs.size());
  std::map<std::string, std::uint32_t> df;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& tok : docs[d].tokens) ++counts[d][tok];
    for (const auto& [term, _] : counts[d]) ++df[term];
  }

  VectorizedCorpus out;
  auto& vocab = out.vocabulary;
  vocab.numDocs = docs.size();
  for (const auto& [term, f] : df) {
    if (f >= minDf) {
      vocab.termToIndex.emplace(term, static_cast<Dim>(vocab.terms.size()));
      vocab.terms.push_back(term);
      vocab.docFreq.push_back(f);
    }
  }
  if (vocab.terms.empty()) {
    throw DataError("empty vocabulary: no term reaches min-df " + std::to_string(minDf));
  }

  std::vector<double> idf(vocab.size());
  const double n = static_cast<double>(vocab.numDocs);
  for (std::size_t i = 0; i < idf.size(); ++i) {
    idf[i] = std::max(std::log(n / vocab.docFreq[i]), kIdfFloor);
  }

  out.vectors.reserve(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    SparseVector v;
    v.docId = docs[d].docId;
    for (const auto& [term, tf] : counts[d]) {
      const auto it = vocab.termToIndex.find(term);
      if (it == vocab.termToIndex.end()) continue;
      v.terms.push_back(Term{it->second, (1.0 + std::log(static_cast<double>(tf))) * idf[it->second]});
    }
    // Lexicographic vocabulary order == map order, so terms are already sorted.
    normalizeInPlace(v.terms);
    if (v.isZero()) ++out.zeroVectors;
    out.vectors.push_back(std::move(v));
  }
  return out;
}

std::vector<SparseVector> scaleCorpus(std::span<const SparseVector> vectors, std::size_t factor,
                                      std::uint64_t seed) {
  if (factor == 0) throw std::invalid_argument("scale factor must be >= 1");
  DocId stride = 0;
  for (const auto& v : vectors) stride = std::max(stride, v.docId + 1);

  std::vector<SparseVector> out;
  out.reserve(vectors.size() * factor);
  out.insert(out.end(), vectors.begin(), vectors.end());

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(0.95, 1.05);
  for (std::size_t copy = 1; copy < factor; ++copy) {
    for (const auto& v : vectors) {
      SparseVector c;
      c.docId = copy * stride + v.docId;
      c.terms = v.terms;
      for (auto& t : c.terms) t.weight *= jitter(rng);
      normalizeInPlace(c.terms);
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace docclust
