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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "docclust/exact_sum.hpp"
#include "docclust/vecspace.hpp"
#include "support/fixtures.hpp"

namespace docclust {
namespace {

SparseVector vec(DocId id, std::vector<Term> terms) { return SparseVector{id, std::move(terms)}; }

TEST(SparseVector, ValidateRejectsBrokenInvariants) {
  EXPECT_NO_THROW(vec(0, {{0, 0.6}, {3, 0.8}}).validate());
  EXPECT_THROW(vec(0, {{3, 0.6}, {1, 0.8}}).validate(), std::invalid_argument);
  EXPECT_THROW(vec(0, {{1, 0.6}, {1, 0.8}}).validate(), std::invalid_argument);
  EXPECT_THROW(vec(0, {{1, 0.0}}).validate(), std::invalid_argument);
  EXPECT_THROW(vec(0, {{1, NAN}}).validate(), std::invalid_argument);
}

TEST(SparseVector, MakeSparseSortsMergesAndDropsZeros) {
  auto v = makeSparse(4, {{5, 1.0}, {2, 2.0}, {5, -1.0}, {2, 1.0}, {9, 0.0}});
  EXPECT_EQ(v.docId, 4u);
  ASSERT_EQ(v.terms.size(), 1u);
  EXPECT_EQ(v.terms[0], (Term{2, 3.0}));
}

TEST(SparseVector, NormalizeAndDimensions) {
  std::vector<Term> t{{0, 3.0}, {7, 4.0}};
  normalizeInPlace(t);
  EXPECT_DOUBLE_EQ(t[0].weight, 0.6);
  EXPECT_DOUBLE_EQ(t[1].weight, 0.8);
  std::vector<Term> zero;
  normalizeInPlace(zero);
  EXPECT_TRUE(zero.empty());
  std::vector<SparseVector> vs{vec(0, t), vec(1, {})};
  EXPECT_EQ(dimensionCount(vs), 8u);
}

TEST(ExactSum, OrderIndependent) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> xs(1000);
  for (auto& x : xs) x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 12) - 6);
  FixedSum forward;
  for (double x : xs) forward.add(x);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(xs.begin(), xs.end(), rng);
    FixedSum a, b;
    for (std::size_t i = 0; i < xs.size(); ++i) (i % 3 ? a : b).add(xs[i]);
    a += b;
    EXPECT_EQ(a, forward);
  }
}

TEST(ExactSum, ExactOnRepresentableValues) {
  FixedSum s;
  s.add(0.5);
  s.add(0.25);
  s.add(-1.0);
  EXPECT_EQ(s.value(), -0.25);
  EXPECT_EQ(fromFixed(toFixed(1.0 / 3.0)), std::ldexp(std::nearbyint(std::ldexp(1.0 / 3.0, 96)), -96));
}

TEST(ExactSum, RejectsOutOfRange) {
  EXPECT_THROW(toFixed(std::ldexp(1.0, 24)), std::domain_error);
  EXPECT_THROW(toFixed(INFINITY), std::domain_error);
  EXPECT_THROW(toFixed(NAN), std::domain_error);
  EXPECT_NO_THROW(toFixed(-1e7));
}

TEST(ExactSum, SparseSumMergeEqualsSequentialAdd) {
  const auto vs = testing::randomVectors(60, 40, 0.2, 9);
  SparseSum sequential;
  std::vector<SparseSum> parts;
  for (const auto& v : vs) {
    sequential.add(SparseSum(v));
    parts.emplace_back(v);
  }
  std::reverse(parts.begin(), parts.end());
  EXPECT_EQ(SparseSum::merge(parts), sequential);

  std::vector<const SparseVector*> ptrs;
  for (const auto& v : vs) ptrs.push_back(&v);
  EXPECT_EQ(SparseSum::of(ptrs), sequential);
}

TEST(ExactSum, CancellingTermsDisappear) {
  SparseSum s(vec(0, {{1, 0.5}, {2, 0.5}}));
  s.add(SparseSum(vec(1, {{1, -0.5}})));
  const auto terms = s.toTerms();
  ASSERT_EQ(terms.size(), 1u);
  EXPECT_EQ(terms[0], (Term{2, 0.5}));
}

TEST(Cosine, HandExamples) {
  const auto a = vec(0, {{0, 0.6}, {1, 0.8}});
  const auto b = vec(1, {{1, 1.0}});
  EXPECT_DOUBLE_EQ(cosine(a, b), 0.8);
  EXPECT_NEAR(cosine(a, a), 1.0, 1e-9);
  EXPECT_EQ(cosine(a, vec(2, {{5, 1.0}})), 0.0);
  EXPECT_EQ(cosine(a, vec(3, {})), 0.0);
}

TEST(Cosine, SymmetricAndBounded) {
  const auto vs = testing::randomVectors(40, 30, 0.3, 2);
  for (const auto& a : vs) {
    for (const auto& b : vs) {
      EXPECT_EQ(cosine(a, b), cosine(b, a));
      EXPECT_GE(cosine(a, b), 0.0);
      EXPECT_LE(cosine(a, b), 1.0 + 1e-9);
    }
  }
}

TEST(Centroid, SingleMemberIsThatVector) {
  const auto v = vec(0, {{2, 0.6}, {4, 0.8}});
  const auto c = centroidOf(std::span<const SparseVector>(&v, 1));
  EXPECT_EQ(c.memberCount, 1u);
  ASSERT_EQ(c.terms.size(), 2u);
  EXPECT_NEAR(c.terms[0].weight, 0.6, 1e-15);
  EXPECT_NEAR(c.terms[1].weight, 0.8, 1e-15);
}

TEST(Centroid, OrthogonalPairGivesNormalizedMean) {
  std::vector<SparseVector> vs{vec(0, {{0, 1.0}}), vec(1, {{1, 1.0}})};
  const auto c = centroidOf(vs);
  ASSERT_EQ(c.terms.size(), 2u);
  EXPECT_NEAR(c.terms[0].weight, std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(c.terms[1].weight, std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(c.squaredNorm(), 1.0, 1e-12);
}

TEST(Centroid, EmptySetIsFlagged) {
  const auto c = centroidOf(std::span<const SparseVector>());
  EXPECT_TRUE(c.isEmpty());
  EXPECT_TRUE(c.isZero());
}

TEST(Centroid, PermutationInvariant) {
  auto vs = testing::randomVectors(80, 50, 0.15, 4);
  const auto reference = centroidOf(vs);
  std::mt19937 rng(1);
  for (int t = 0; t < 5; ++t) {
    std::shuffle(vs.begin(), vs.end(), rng);
    EXPECT_EQ(centroidOf(vs), reference);
  }
}

TEST(Rss, HandExamples) {
  std::vector<SparseVector> vs{vec(0, {{0, 1.0}})};
  std::vector<Label> labels{0};
  std::vector<Centroid> onTop{centroidAt(vs[0])};
  std::vector<Centroid> orthogonal{Centroid{{{1, 1.0}}, 1}};
  EXPECT_EQ(rss(vs, labels, onTop), 0.0);
  EXPECT_DOUBLE_EQ(rss(vs, labels, orthogonal), 2.0);
  EXPECT_DOUBLE_EQ(rssCosineForm(vs, labels, orthogonal), 2.0);
}

TEST(Rss, LabelOutOfRangeThrows) {
  std::vector<SparseVector> vs{vec(0, {{0, 1.0}})};
  std::vector<Label> labels{3};
  std::vector<Centroid> cs{centroidAt(vs[0])};
  EXPECT_THROW(rss(vs, labels, cs), std::out_of_range);
  EXPECT_THROW(rssCosineForm(vs, labels, cs), std::out_of_range);
  EXPECT_THROW(sphericalObjective(vs, labels, cs), std::out_of_range);
  std::vector<Label> tooFew;
  EXPECT_THROW(rss(vs, tooFew, cs), std::invalid_argument);
}

TEST(Rss, NormAndCosineFormsAgreeAndMatchObjective) {
  auto vs = testing::randomVectors(200, 60, 0.1, 8);
  vs.push_back(vec(200, {}));  // flagged zero vector
  std::mt19937 rng(3);
  const std::size_t k = 7;
  std::vector<Label> labels(vs.size());
  for (auto& l : labels) l = rng() % k;
  std::vector<Centroid> cs;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<const SparseVector*> members;
    for (std::size_t d = 0; d < vs.size(); ++d) {
      if (labels[d] == c) members.push_back(&vs[d]);
    }
    cs.push_back(centroidOf(members));
  }
  const double r = rss(vs, labels, cs);
  EXPECT_NEAR(r, rssCosineForm(vs, labels, cs), 1e-9);
  // rss = 2 n' - 2 objective, n' counting non-zero vectors, plus |c|^2 for
  // each zero vector.
  EXPECT_NEAR(r, 2.0 * 200 - 2.0 * sphericalObjective(vs, labels, cs) + cs[labels[200]].squaredNorm(), 1e-9);

  // Independent summation of the objective.
  long double brute = 0.0L;
  for (std::size_t d = 0; d < vs.size(); ++d) {
    for (const auto& t : vs[d].terms) {
      for (const auto& u : cs[labels[d]].terms) {
        if (t.dim == u.dim) brute += static_cast<long double>(t.weight) * u.weight;
      }
    }
  }
  EXPECT_NEAR(sphericalObjective(vs, labels, cs), static_cast<double>(brute), 1e-9);
}

TEST(Objective, AllOnCentroidsGivesN) {
  const auto vs = testing::randomVectors(30, 20, 0.3, 6);
  std::vector<Label> labels(vs.size());
  std::vector<Centroid> cs;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    labels[i] = static_cast<Label>(i);
    cs.push_back(centroidAt(vs[i]));
  }
  EXPECT_NEAR(sphericalObjective(vs, labels, cs), 30.0, 1e-9);
}

class NearestCenterLayouts : public ::testing::TestWithParam<double> {};

TEST_P(NearestCenterLayouts, MatchesBruteForceArgmaxBitwise) {
  const double density = GetParam();
  const auto docs = testing::randomVectors(300, 200, density, 21);
  const auto centers = testing::randomVectors(12, 200, density, 22);
  const NearestCenter index{std::span<const SparseVector>(centers)};
  std::vector<double> scratch;
  std::vector<double> scores(centers.size());
  for (const auto& d : docs) {
    std::size_t best = 0;
    double bestSim = cosine(d, centers[0]);
    for (std::size_t c = 1; c < centers.size(); ++c) {
      const double s = cosine(d, centers[c]);
      if (s > bestSim) {
        bestSim = s;
        best = c;
      }
    }
    const auto m = index.nearest(d, scratch);
    EXPECT_EQ(m.index, best);
    EXPECT_EQ(m.similarity, bestSim);
    index.scores(d, scores);
    for (std::size_t c = 0; c < centers.size(); ++c) {
      EXPECT_EQ(scores[c], cosine(d, centers[c]));
      EXPECT_EQ(index.similarity(d, static_cast<Label>(c)), cosine(d, centers[c]));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(SparseAndDense, NearestCenterLayouts, ::testing::Values(0.01, 0.6));

TEST(NearestCenter, LayoutFollowsDensity) {
  const auto sparse = testing::randomVectors(10, 5000, 0.001, 1);
  const auto dense = testing::randomVectors(10, 50, 0.9, 1);
  EXPECT_FALSE(NearestCenter(std::span<const SparseVector>(sparse)).denseLayout());
  EXPECT_TRUE(NearestCenter(std::span<const SparseVector>(dense)).denseLayout());
}

TEST(NearestCenter, TiesGoToLowestIndex) {
  std::vector<SparseVector> centers{vec(0, {{1, 1.0}}), vec(1, {{0, 1.0}}), vec(2, {{0, 1.0}})};
  const NearestCenter index{std::span<const SparseVector>(centers)};
  std::vector<double> scratch;
  EXPECT_EQ(index.nearest(vec(9, {{0, 1.0}}), scratch).index, 1u);
  // Zero vector ties everywhere at 0.
  EXPECT_EQ(index.nearest(vec(9, {}), scratch).index, 0u);
  // Dimension beyond every center.
  EXPECT_EQ(index.nearest(vec(9, {{40, 1.0}}), scratch).index, 0u);
}

}  // namespace
}  // namespace docclust
