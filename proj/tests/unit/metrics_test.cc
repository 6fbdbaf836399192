// Copyright 2026 The reteval Authors.
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

#include "reteval/metrics.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "reteval/errors.h"

namespace reteval {
namespace {

using Ids = std::vector<std::string>;

TEST(RankAgnostic, MissAtOne) {
  const auto s = rank_agnostic_at_k(Ids{"x"}, Ids{"g"}, 1);
  EXPECT_EQ(s.precision, 0.0);
  EXPECT_EQ(s.recall, 0.0);
  EXPECT_EQ(s.f1, 0.0);
}

TEST(RankAgnostic, SingleGoldHitInTopFive) {
  const auto s = rank_agnostic_at_k(Ids{"a", "b", "g", "c", "d"}, Ids{"g"}, 5);
  EXPECT_NEAR(s.recall, 1.0, 1e-9);
  EXPECT_NEAR(s.precision, 0.2, 1e-9);
  EXPECT_NEAR(s.f1, 0.3333333333, 1e-9);
}

TEST(RankAgnostic, TwoGold) {
  const auto s = rank_agnostic_at_k(Ids{"a", "x", "b", "y"}, Ids{"a", "b"}, 4);
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_DOUBLE_EQ(s.recall, 1.0);
  EXPECT_NEAR(s.f1, 2.0 / 3.0, 1e-12);
}

TEST(RankAgnostic, PrecisionDividesByKOnShortLists) {
  const auto s = rank_agnostic_at_k(Ids{"g"}, Ids{"g"}, 10);
  EXPECT_DOUBLE_EQ(s.precision, 0.1);
}

TEST(RankAgnostic, Preconditions) {
  EXPECT_THROW(rank_agnostic_at_k(Ids{"a"}, Ids{}, 1), PreconditionError);
  EXPECT_THROW(rank_agnostic_at_k(Ids{"a"}, Ids{"a"}, 0), PreconditionError);
}

TEST(RankAgnostic, SingleGoldIdentity) {
  std::mt19937_64 rng(1);
  for (std::size_t k = 1; k <= 20; ++k) {
    Ids retrieved;
    for (std::size_t i = 0; i < k; ++i) retrieved.push_back("x" + std::to_string(i));
    retrieved[rng() % k] = "g";
    const auto s = rank_agnostic_at_k(retrieved, Ids{"g"}, k);
    EXPECT_DOUBLE_EQ(s.precision, 1.0 / static_cast<double>(k));
    EXPECT_DOUBLE_EQ(s.recall, 1.0);
    EXPECT_NEAR(s.f1, 2.0 / static_cast<double>(k + 1), 1e-15);
  }
}

TEST(RankAgnostic, RecallNondecreasingInK) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    Ids retrieved, gold;
    for (int i = 0; i < 15; ++i) retrieved.push_back("c" + std::to_string(rng() % 20));
    for (int i = 0; i < 1 + static_cast<int>(rng() % 4); ++i) gold.push_back("c" + std::to_string(rng() % 20));
    double last = 0;
    for (std::size_t k = 1; k <= 16; ++k) {
      const double r = rank_agnostic_at_k(retrieved, gold, k).recall;
      EXPECT_GE(r, last);
      last = r;
    }
  }
}

TEST(Mrr, Examples) {
  EXPECT_DOUBLE_EQ(mrr(std::vector<RankedQuery>{{{"g", "a"}, {"g"}}}), 1.0);
  EXPECT_DOUBLE_EQ(mrr(std::vector<RankedQuery>{{{"a", "b", "c", "g"}, {"g"}}}), 0.25);
  EXPECT_DOUBLE_EQ(mrr(std::vector<RankedQuery>{{{"g"}, {"g"}}, {{"a"}, {"g"}}}), 0.5);
  EXPECT_THROW(mrr(std::vector<RankedQuery>{}), PreconditionError);
  EXPECT_THROW(mrr(std::vector<RankedQuery>{{{"a"}, {}}}), PreconditionError);
}

TEST(Ndcg, Examples) {
  EXPECT_DOUBLE_EQ(ndcg_at_k(Ids{"g", "a"}, Ids{"g"}, 1), 1.0);
  EXPECT_NEAR(ndcg_at_k(Ids{"a", "g"}, Ids{"g"}, 2), 0.6309, 1e-4);
  EXPECT_NEAR(ndcg_at_k(Ids{"a", "g"}, Ids{"g"}, 2), 1.0 / std::log2(3.0), 1e-12);
  EXPECT_DOUBLE_EQ(ndcg_at_k(Ids{"a", "b"}, Ids{"g"}, 2), 0.0);
}

TEST(Ndcg, OneIffGoldOccupiesTopRanks) {
  EXPECT_DOUBLE_EQ(ndcg_at_k(Ids{"b", "a", "x"}, Ids{"a", "b"}, 3), 1.0);
  EXPECT_LT(ndcg_at_k(Ids{"a", "x", "b"}, Ids{"a", "b"}, 3), 1.0);
}

TEST(Spearman, Examples) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> rev(x.rbegin(), x.rend());
  EXPECT_NEAR(spearman_rho(x, x), 1.0, 1e-12);
  EXPECT_NEAR(spearman_rho(x, rev), -1.0, 1e-12);
  EXPECT_NEAR(spearman_rho(std::vector<double>{1, 1, 0, 0}, std::vector<double>{1, 0, 1, 0}), 0.0, 1e-12);
}

TEST(Spearman, Errors) {
  const std::vector<double> a{1, 2}, b{1, 2, 3}, c{4, 4}, one{1};
  EXPECT_THROW(spearman_rho(a, b), PreconditionError);
  EXPECT_THROW(spearman_rho(one, one), PreconditionError);
  EXPECT_THROW(spearman_rho(a, c), DomainError);
  EXPECT_THROW(spearman_rho(c, a), DomainError);
}

TEST(Spearman, AverageRanksForTies) {
  EXPECT_EQ(average_ranks(std::vector<double>{10, 20, 10, 30}), (std::vector<double>{1.5, 3, 1.5, 4}));
}

TEST(Spearman, InvariantUnderIncreasingTransforms) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> x(12), y(12);
    for (auto& v : x) v = std::round(u(rng));
    for (auto& v : y) v = u(rng);
    std::vector<double> tx, ty;
    for (double v : x) tx.push_back(std::exp(v) + 3);
    for (double v : y) ty.push_back(v * v * v + 7 * v);
    const auto base = correlate(x, y, Subset::All);
    const auto moved = correlate(tx, ty, Subset::All);
    ASSERT_EQ(base.rho.has_value(), moved.rho.has_value());
    if (base.rho) EXPECT_NEAR(*base.rho, *moved.rho, 1e-12);
  }
}

TEST(Correlate, RecordsUndefinedCases) {
  const std::vector<double> one{1}, constant{1, 1, 1}, varied{0, 1, 0};
  auto r = correlate(one, one, Subset::Refined);
  EXPECT_FALSE(r.rho);
  EXPECT_EQ(r.n, 1u);
  EXPECT_EQ(r.subset, Subset::Refined);
  EXPECT_FALSE(r.undefined_reason.empty());
  r = correlate(constant, varied, Subset::All);
  EXPECT_FALSE(r.rho);
  EXPECT_FALSE(r.undefined_reason.empty());
  EXPECT_THROW(correlate(one, varied, Subset::All), PreconditionError);
}

// A smaller sweep than the acceptance run; keeps the unit suite fast.
TEST(Metrics, MatchBruteForceOracles) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng() % 20;
    const std::size_t k = 1 + rng() % 10;
    Ids retrieved, gold;
    for (std::size_t i = 0; i < n; ++i) retrieved.push_back("c" + std::to_string(rng() % 25));
    for (std::size_t i = 0; i < 1 + rng() % 5; ++i) gold.push_back("c" + std::to_string(rng() % 25));
    const auto got = rank_agnostic_at_k(retrieved, gold, k);
    const auto want = oracle::prf_at_k(retrieved, gold, k);
    EXPECT_EQ(got.precision, want.precision);
    EXPECT_EQ(got.recall, want.recall);
    EXPECT_NEAR(got.f1, want.f1, 1e-15);
    EXPECT_EQ(reciprocal_rank(retrieved, gold), oracle::reciprocal_rank(retrieved, gold));
    EXPECT_NEAR(ndcg_at_k(retrieved, gold, k), oracle::ndcg(retrieved, gold, k), 1e-12);

    std::vector<double> x(n), y(n);
    for (auto& v : x) v = static_cast<double>(rng() % 4);
    for (auto& v : y) v = static_cast<double>(rng() % 6);
    const auto c = correlate(x, y, Subset::All);
    if (c.rho) EXPECT_NEAR(*c.rho, oracle::spearman(x, y), 1e-9);
  }
}

}  // namespace
}  // namespace reteval
