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

#include "docclust/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "docclust/errors.hpp"
#include "docclust/tokenizer.hpp"

namespace docclust::synthetic {

namespace fs = std::filesystem;

namespace {

const std::array<std::string, 20> kGroups = {
    "alt.atheism",           "comp.graphics",         "comp.os.ms-windows.misc",
    "comp.sys.ibm.pc.hardware", "comp.sys.mac.hardware", "comp.windows.x",
    "misc.forsale",          "rec.autos",             "rec.motorcycles",
    "rec.sport.baseball",    "rec.sport.hockey",      "sci.crypt",
    "sci.electronics",       "sci.med",               "sci.space",
    "soc.religion.christian", "talk.politics.guns",   "talk.politics.mideast",
    "talk.politics.misc",    "talk.religion.misc"};

// Top-level hierarchy of each group; religion spans alt, soc and talk.
constexpr std::array<std::uint32_t, 20> kHierarchy = {5, 0, 0, 0, 0, 0, 1, 2, 2, 2,
                                                      2, 3, 3, 3, 3, 5, 4, 4, 4, 5};
constexpr std::size_t kHierarchies = 6;

constexpr std::size_t kBackgroundWords = 8000;
constexpr std::size_t kHierarchyWords = 500;
constexpr std::size_t kGroupWords = 400;
constexpr std::size_t kTopicWords = 15;
constexpr std::size_t kUsers = 3000;

const std::array<const char*, 48> kStopwords = {
    "the",  "of",    "and",   "to",    "in",   "is",    "that",  "it",    "for",   "you",
    "was",  "on",    "are",   "with",  "as",   "be",    "this",  "have",  "not",   "but",
    "at",   "they",  "from",  "or",    "an",   "by",    "what",  "all",   "if",    "there",
    "can",  "would", "one",   "so",    "about", "which", "do",   "will",  "my",    "we",
    "has",  "any",   "their", "just",  "been", "some",  "no",    "were"};

const std::array<const char*, 28> kOnsets = {"b",  "c",  "d",  "f",  "g",  "h",  "j",
                                             "k",  "l",  "m",  "n",  "p",  "r",  "s",
                                             "t",  "v",  "w",  "z",  "br", "cr", "dr",
                                             "fl", "gr", "pl", "pr", "st", "tr", "sh"};
const std::array<const char*, 9> kVowels = {"a", "e", "i", "o", "u", "ai", "ea", "ou", "io"};
const std::array<const char*, 10> kCodas = {"", "", "", "n", "r", "s", "t", "l", "nd", "rk"};

class Zipf {
 public:
  Zipf(std::size_t size, double exponent) {
    std::vector<double> w(size);
    for (std::size_t r = 0; r < size; ++r) w[r] = 1.0 / std::pow(static_cast<double>(r + 1), exponent);
    dist_ = std::discrete_distribution<std::size_t>(w.begin(), w.end());
  }
  std::size_t operator()(std::mt19937_64& rng) { return dist_(rng); }

 private:
  std::discrete_distribution<std::size_t> dist_;
};

// Distinct pronounceable words that survive tokenization unchanged.
std::vector<std::string> makeWords(std::size_t count, std::mt19937_64& rng) {
  std::vector<std::string> words;
  words.reserve(count);
  std::unordered_set<std::string> seen;
  std::uniform_int_distribution<std::size_t> onset(0, kOnsets.size() - 1);
  std::uniform_int_distribution<std::size_t> vowel(0, kVowels.size() - 1);
  std::uniform_int_distribution<std::size_t> coda(0, kCodas.size() - 1);
  std::uniform_int_distribution<int> syllables(2, 3);
  while (words.size() < count) {
    std::string w;
    const int n = syllables(rng);
    for (int i = 0; i < n; ++i) {
      w += kOnsets[onset(rng)];
      w += kVowels[vowel(rng)];
    }
    w += kCodas[coda(rng)];
    if (isStopword(w) || !seen.insert(w).second) continue;
    words.push_back(std::move(w));
  }
  return words;
}

struct Lexicon {
  std::vector<std::string> background;
  std::vector<std::vector<std::string>> hierarchy;
  std::vector<std::vector<std::string>> group;
  std::vector<std::string> users;
  std::vector<std::string> hosts;
};

Lexicon makeLexicon(std::size_t groups, std::mt19937_64& rng) {
  const std::size_t total =
      kBackgroundWords + kHierarchies * kHierarchyWords + groups * kGroupWords + kUsers + 200;
  auto words = makeWords(total, rng);
  Lexicon lex;
  auto take = [&, pos = std::size_t{0}](std::size_t n) mutable {
    std::vector<std::string> out(words.begin() + static_cast<std::ptrdiff_t>(pos),
                                 words.begin() + static_cast<std::ptrdiff_t>(pos + n));
    pos += n;
    return out;
  };
  lex.background = take(kBackgroundWords);
  for (std::size_t h = 0; h < kHierarchies; ++h) lex.hierarchy.push_back(take(kHierarchyWords));
  for (std::size_t g = 0; g < groups; ++g) lex.group.push_back(take(kGroupWords));
  lex.users = take(kUsers);
  lex.hosts = take(200);
  return lex;
}

}  // namespace

std::span<const std::string> groupNames() { return kGroups; }

std::vector<Posting> generateNewsgroups(const NewsgroupsConfig& config) {
  if (config.groups < 1 || config.groups > kGroups.size()) {
    throw std::invalid_argument("groups must be in [1, 20]");
  }
  if (config.docsPerGroup < 1) throw std::invalid_argument("docsPerGroup must be >= 1");
  const double shares =
      config.groupShare + config.hierarchyShare + config.crossGroupShare + config.stopwordShare;
  if (config.medianLength < 1.0 || shares > 1.0 || config.groupShare < 0 ||
      config.hierarchyShare < 0 || config.crossGroupShare < 0 || config.stopwordShare < 0) {
    throw std::invalid_argument("invalid synthetic corpus mixture");
  }

  std::mt19937_64 rng(config.seed);
  const Lexicon lex = makeLexicon(config.groups, rng);

  Zipf backgroundZipf(lex.background.size(), 1.05);
  Zipf hierarchyZipf(kHierarchyWords, 1.0);
  Zipf groupZipf(kGroupWords, 0.9);
  Zipf stopZipf(kStopwords.size(), 1.0);
  std::lognormal_distribution<double> length(std::log(config.medianLength), 0.8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> anyGroup(0, config.groups - 1);
  std::uniform_int_distribution<std::size_t> anyUser(0, lex.users.size() - 1);
  std::uniform_int_distribution<std::size_t> anyHost(0, lex.hosts.size() - 1);
  std::uniform_int_distribution<std::size_t> anyTopic(0, kTopicWords - 1);
  std::uniform_int_distribution<std::uint32_t> fileNumber(37000, 105000);

  std::vector<Posting> postings;
  postings.reserve(config.groups * config.docsPerGroup);
  for (std::size_t g = 0; g < config.groups; ++g) {
    const auto& hier = lex.hierarchy[kHierarchy[g]];
    std::set<std::uint32_t> numbers;
    while (numbers.size() < config.docsPerGroup) numbers.insert(fileNumber(rng));

    for (auto number : numbers) {
      // A thread concentrates on a handful of the group's words.
      std::array<std::size_t, kTopicWords> topic{};
      for (auto& t : topic) t = groupZipf(rng);
      std::size_t other = anyGroup(rng);
      if (config.groups > 1) {
        while (other == g) other = anyGroup(rng);
      }
      const bool crossPost = config.groups > 1 && unit(rng) < 0.04;

      auto groupWord = [&](std::size_t grp, bool useTopic) -> const std::string& {
        if (useTopic && unit(rng) < 0.4) return lex.group[grp][topic[anyTopic(rng)]];
        return lex.group[grp][groupZipf(rng)];
      };

      std::string text;
      text += "From: " + lex.users[anyUser(rng)] + "@" + lex.hosts[anyHost(rng)] + ".edu\n";
      text += "Newsgroups: " + kGroups[g];
      if (crossPost) text += "," + kGroups[other];
      text += "\nSubject: ";
      if (unit(rng) < 0.5) text += "Re: ";
      for (int i = 0; i < 4; ++i) text += groupWord(g, true) + (i < 3 ? " " : "\n");
      text += "Organization: " + lex.hosts[anyHost(rng)] + " " + lex.background[backgroundZipf(rng)] + "\n";

      const auto words = static_cast<std::size_t>(std::max(8.0, std::round(length(rng))));
      text += "Lines: " + std::to_string(words / 12 + 1) + "\n\n";
      for (std::size_t w = 0; w < words; ++w) {
        double r = unit(rng);
        if (r < config.stopwordShare) {
          text += kStopwords[stopZipf(rng)];
        } else if ((r -= config.stopwordShare) < config.groupShare) {
          text += groupWord(crossPost && unit(rng) < 0.3 ? other : g, true);
        } else if ((r -= config.groupShare) < config.hierarchyShare) {
          text += hier[hierarchyZipf(rng)];
        } else if ((r -= config.hierarchyShare) < config.crossGroupShare) {
          text += groupWord(other, false);
        } else {
          text += lex.background[backgroundZipf(rng)];
        }
        text += (w % 12 == 11) ? ".\n" : " ";
      }
      text += "\n-- \n" + lex.users[anyUser(rng)] + "\n";

      postings.push_back(Posting{kGroups[g], kGroups[g] + "/" + std::to_string(number), std::move(text)});
    }
  }
  std::sort(postings.begin(), postings.end(),
            [](const Posting& a, const Posting& b) { return a.relativePath < b.relativePath; });
  return postings;
}

void writePostings(const fs::path& root, std::span<const Posting> postings) {
  for (const auto& p : postings) {
    const fs::path file = root / p.relativePath;
    fs::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary);
    out << p.text;
    if (!out) throw DataError("cannot write " + file.string());
  }
}

std::vector<Document> toDocuments(std::span<const Posting> postings) {
  std::vector<Document> docs;
  docs.reserve(postings.size());
  for (const auto& p : postings) {
    docs.push_back(Document{docs.size(), p.relativePath, tokenize(p.text)});
  }
  return docs;
}

std::vector<std::uint32_t> groupLabels(std::span<const Posting> postings) {
  std::vector<std::uint32_t> labels;
  labels.reserve(postings.size());
  for (const auto& p : postings) {
    const auto it = std::find(kGroups.begin(), kGroups.end(), p.group);
    labels.push_back(static_cast<std::uint32_t>(it - kGroups.begin()));
  }
  return labels;
}

}  // namespace docclust::synthetic
