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
#include <numeric>
#include <unordered_set>

#include "reteval/errors.h"

namespace reteval {

namespace {

std::unordered_set<std::string_view> as_set(std::span<const std::string> ids) {
  return {ids.begin(), ids.end()};
}

}  // namespace

RankAgnosticScores rank_agnostic_at_k(std::span<const std::string> retrieved,
                                      std::span<const std::string> gold, std::size_t k) {
  if (k == 0) throw PreconditionError("rank_agnostic_at_k: k must be >= 1");
  if (gold.empty()) throw PreconditionError("rank_agnostic_at_k: empty gold set");
  const auto gold_set = as_set(gold);
  std::unordered_set<std::string_view> hits;
  const auto n = std::min(k, retrieved.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (gold_set.contains(retrieved[i])) hits.insert(retrieved[i]);
  }
  RankAgnosticScores s;
  s.k = k;
  s.precision = static_cast<double>(hits.size()) / static_cast<double>(k);
  s.recall = static_cast<double>(hits.size()) / static_cast<double>(gold_set.size());
  s.f1 = (s.precision + s.recall) == 0.0
             ? 0.0
             : 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

double reciprocal_rank(std::span<const std::string> retrieved, std::span<const std::string> gold) {
  if (gold.empty()) throw PreconditionError("reciprocal_rank: empty gold set");
  const auto gold_set = as_set(gold);
  for (std::size_t i = 0; i < retrieved.size(); ++i) {
    if (gold_set.contains(retrieved[i])) return 1.0 / static_cast<double>(i + 1);
  }
  return 0.0;
}

double mrr(std::span<const RankedQuery> queries) {
  if (queries.empty()) throw PreconditionError("mrr: no queries");
  double sum = 0.0;
  for (const auto& q : queries) sum += reciprocal_rank(q.retrieved, q.gold);
  return sum / static_cast<double>(queries.size());
}

double ndcg_at_k(std::span<const std::string> retrieved, std::span<const std::string> gold,
                 std::size_t k) {
  if (k == 0) throw PreconditionError("ndcg_at_k: k must be >= 1");
  if (gold.empty()) throw PreconditionError("ndcg_at_k: empty gold set");
  const auto gold_set = as_set(gold);
  std::unordered_set<std::string_view> seen;
  double dcg = 0.0;
  const auto n = std::min(k, retrieved.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (gold_set.contains(retrieved[i]) && seen.insert(retrieved[i]).second) {
      dcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
    }
  }
  double ideal = 0.0;
  const auto m = std::min(k, gold_set.size());
  for (std::size_t i = 0; i < m; ++i) ideal += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  return dcg / ideal;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // positions i..j (0-based) share ranks i+1..j+1
    const double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

double spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw PreconditionError("spearman_rho: length mismatch");
  if (x.size() < 2) throw PreconditionError("spearman_rho: need at least two observations");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mx, dy = ry[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DomainError("spearman_rho: constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::string_view to_string(Subset subset) { return subset == Subset::All ? "all" : "refined"; }

CorrelationResult correlate(std::span<const double> x, std::span<const double> y, Subset subset) {
  if (x.size() != y.size()) throw PreconditionError("correlate: length mismatch");
  CorrelationResult r;
  r.n = x.size();
  r.subset = subset;
  try {
    r.rho = spearman_rho(x, y);
  } catch (const PreconditionError&) {
    r.undefined_reason = "fewer than two observations";
  } catch (const DomainError&) {
    r.undefined_reason = "constant input";
  }
  return r;
}

}  // namespace reteval
