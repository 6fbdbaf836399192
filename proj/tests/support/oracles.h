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

// Reference implementations used to cross-check the library. They favor
// obviousness over speed and share no code with src/.

#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace oracle {

struct Prf {
  double precision = 0, recall = 0, f1 = 0;
};

inline Prf prf_at_k(const std::vector<std::string>& retrieved, const std::vector<std::string>& gold,
                    std::size_t k) {
  const std::set<std::string> g(gold.begin(), gold.end());
  std::set<std::string> hits;
  for (std::size_t i = 0; i < retrieved.size() && i < k; ++i) {
    if (g.count(retrieved[i])) hits.insert(retrieved[i]);
  }
  Prf r;
  r.precision = static_cast<double>(hits.size()) / static_cast<double>(k);
  r.recall = static_cast<double>(hits.size()) / static_cast<double>(g.size());
  if (r.precision + r.recall > 0) r.f1 = 2 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

inline double reciprocal_rank(const std::vector<std::string>& retrieved,
                              const std::vector<std::string>& gold) {
  for (std::size_t i = 0; i < retrieved.size(); ++i) {
    for (const auto& g : gold) {
      if (retrieved[i] == g) return 1.0 / static_cast<double>(i + 1);
    }
  }
  return 0.0;
}

inline double ndcg(const std::vector<std::string>& retrieved, const std::vector<std::string>& gold,
                   std::size_t k) {
  const std::set<std::string> g(gold.begin(), gold.end());
  std::set<std::string> seen;
  double dcg = 0;
  for (std::size_t i = 0; i < retrieved.size() && i < k; ++i) {
    if (g.count(retrieved[i]) && seen.insert(retrieved[i]).second) {
      dcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
    }
  }
  double ideal = 0;
  for (std::size_t i = 0; i < g.size() && i < k; ++i) ideal += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  return dcg / ideal;
}

// Quadratic fractional ranking: 1 + (#smaller) + (#equal - 1) / 2.
inline std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double less = 0, equal = 0;
    for (double w : v) {
      if (w < v[i]) less += 1;
      if (w == v[i]) equal += 1;
    }
    r[i] = 1 + less + (equal - 1) / 2;
  }
  return r;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(ranks(x), ranks(y));
}

}  // namespace oracle
