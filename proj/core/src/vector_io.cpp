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

#include "docclust/vector_io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "docclust/errors.hpp"

namespace docclust {

namespace {

constexpr char kMagic[4] = {'T', 'C', 'V', '1'};
constexpr std::size_t kHeaderBytes = 4 + 8 + 8;


template <class T>
void putLE(std::string& out, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  U bits;
  std::memcpy(&bits, &value, sizeof(T));
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
  }
}

template <class T>
T getLE(const unsigned char* p) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<U>(p[i]) << (8 * i);
  T value;
  std::memcpy(&value, &bits, sizeof(T));
  return value;
}

}  // namespace

void writeVectors(const std::filesystem::path& path, std::span<const SparseVector> vectors,
                  std::size_t numDims) {
  std::string buf;
  buf.append(kMagic, 4);
  putLE<std::uint64_t>(buf, vectors.size());
  putLE<std::uint64_t>(buf, numDims);
  for (const auto& v : vectors) {
    putLE<std::uint64_t>(buf, v.docId);
    putLE<std::uint32_t>(buf, static_cast<std::uint32_t>(v.terms.size()));
    for (const auto& t : v.terms) {
      putLE<std::uint32_t>(buf, t.dim);
      putLE<double>(buf, t.weight);
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw DataError("write to '" + path.string() + "' failed");
}

VectorFile readVectors(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open vector file '" + path.string() + "'");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto* data = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t size = bytes.size();

  if (size < kHeaderBytes || std::memcmp(data, kMagic, 4) != 0) {
    throw DataError("'" + path.string() + "' is not a TCV1 vector file");
  }
  const auto numDocs = getLE<std::uint64_t>(data + 4);
  VectorFile file;
  file.numDims = getLE<std::uint64_t>(data + 12);

  auto fail = [&](std::uint64_t record, std::size_t offset, const std::string& why) {
    std::ostringstream msg;
    msg << path.string() << ": record " << record << " (byte offset " << offset << "): " << why;
    throw DataError(msg.str());
  };

  std::size_t pos = kHeaderBytes;
  // Each record needs at least 12 bytes; avoids reserving absurd sizes.
  if (numDocs > (size - pos) / 12 + 1) fail(0, pos, "header claims more records than fit");
  file.vectors.reserve(numDocs);
  for (std::uint64_t r = 0; r < numDocs; ++r) {
    const std::size_t start = pos;
    if (size - pos < 12) fail(r, start, "truncated record header");
    SparseVector v;
    v.docId = getLE<std::uint64_t>(data + pos);
    const auto nnz = getLE<std::uint32_t>(data + pos + 8);
    pos += 12;
    if ((size - pos) / 12 < nnz) fail(r, start, "truncated term list");
    v.terms.resize(nnz);
    for (std::uint32_t i = 0; i < nnz; ++i, pos += 12) {
      v.terms[i].dim = getLE<std::uint32_t>(data + pos);
      v.terms[i].weight = getLE<double>(data + pos + 4);
      if (v.terms[i].dim >= file.numDims) fail(r, start, "dimension out of range");
      if (i > 0 && v.terms[i - 1].dim >= v.terms[i].dim) {
        fail(r, start, "dimensions not strictly increasing");
      }
      if (!std::isfinite(v.terms[i].weight) || v.terms[i].weight == 0.0) {
        fail(r, start, "zero or non-finite weight");
      }
    }
    file.vectors.push_back(std::move(v));
  }
  if (pos != size) fail(numDocs, pos, "trailing bytes after last record");
  return file;
}

void writeVocabulary(const std::filesystem::path& path, const Vocabulary& vocabulary) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  for (std::size_t i = 0; i < vocabulary.size(); ++i) {
    out << vocabulary.terms[i] << '\t' << i << '\t' << vocabulary.docFreq[i] << '\n';
  }
  if (!out) throw DataError("write to '" + path.string() + "' failed");
}

Vocabulary readVocabulary(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open vocabulary '" + path.string() + "'");
  Vocabulary vocab;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string term;
    std::size_t index = 0;
    std::uint32_t df = 0;
    if (!std::getline(fields, term, '\t') || !(fields >> index >> df) || index != vocab.size()) {
      throw DataError(path.string() + ": malformed vocabulary line " + std::to_string(lineNo));
    }
    vocab.termToIndex.emplace(term, static_cast<Dim>(index));
    vocab.terms.push_back(term);
    vocab.docFreq.push_back(df);
  }
  return vocab;
}

}  // namespace docclust
