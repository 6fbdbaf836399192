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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace reteval {

struct RankAgnosticScores {
  std::size_t k = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Precision, recall and F1 over the first min(k, |retrieved|) ids.
/// Precision divides by k even when fewer ids were retrieved. Duplicate gold
/// ids count once. Throws PreconditionError if k == 0 or gold is empty.
RankAgnosticScores rank_agnostic_at_k(std::span<const std::string> retrieved,
                                      std::span<const std::string> gold, std::size_t k);

/// 1 / (1-based rank of the first gold id), or 0 when none is retrieved.
double reciprocal_rank(std::span<const std::string> retrieved, std::span<const std::string> gold);

struct RankedQuery {
  std::vector<std::string> retrieved;
  std::vector<std::string> gold;
};

/// Mean reciprocal rank. Throws PreconditionError on an empty list or an
/// empty gold set.
double mrr(std::span<const RankedQuery> queries);

/// Binary-relevance NDCG@k with discount 1/log2(rank + 1).
double ndcg_at_k(std::span<const std::string> retrieved, std::span<const std::string> gold,
                 std::size_t k);

/// Fractional ranks (1-based); tied values share the mean of their ranks.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation of the average ranks of x and y. Throws
/// PreconditionError when sizes differ or n < 2 and DomainError when either
/// input is constant.
double spearman_rho(std::span<const double> x, std::span<const double> y);

enum class Subset { All, Refined };
std::string_view to_string(Subset subset);

struct CorrelationResult {
  std::optional<double> rho;  ///< unset when undefined
  std::size_t n = 0;
  Subset subset = Subset::All;
  std::string undefined_reason;
};

/// spearman_rho with undefined cases captured instead of thrown.
CorrelationResult correlate(std::span<const double> x, std::span<const double> y, Subset subset);

}  // namespace reteval
