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

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reteval/generation.h"
#include "reteval/io.h"
#include "reteval/judge.h"
#include "reteval/metrics.h"

namespace reteval {

/// Which signals disagree with end-to-end correctness for one (question, k).
///   ConventionalMetricFailure: recall_hit != end_to_end
///   RetEvalFailure:            llm_reteval != end_to_end
///   Both:                      both of the above
enum class FailureClass { None, ConventionalMetricFailure, RetEvalFailure, Both };

/// Mechanically detectable sub-cases of a conventional-metric failure.
///   MissButCorrect: gold chunk not retrieved, answer still correct
///                   (unannotated answer-bearing chunks, corpus drift).
///   HitButWrong:    gold chunk retrieved, answer wrong (distracting context).
enum class Diagnosis { None, MissButCorrect, HitButWrong };

std::string_view to_string(FailureClass c);
std::string_view to_string(Diagnosis d);

FailureClass classify_failure(bool recall_hit, bool llm_reteval, bool end_to_end);
Diagnosis diagnose(bool recall_hit, bool end_to_end);

struct QuestionEvalRecord {
  std::string question_id;
  std::size_t k = 0;
  bool recall_hit = false;  ///< some gold chunk within the top k
  RankAgnosticScores scores;
  double reciprocal_rank = 0.0;
  double ndcg = 0.0;
  bool llm_reteval = false;  ///< RAG answer matches the semi-gold answers
  bool end_to_end = false;   ///< RAG answer matches the dataset gold answers
  FailureClass failure_class = FailureClass::None;
  Diagnosis diagnosis = Diagnosis::None;
};

/// Builds a record from a ranked list and the two verdicts; derives scores,
/// recall_hit, failure class and diagnosis.
QuestionEvalRecord make_record(std::string question_id, std::size_t k,
                               std::span<const std::string> ranked,
                               std::span<const std::string> gold, bool llm_reteval,
                               bool end_to_end);

/// Distinct non-failed semi-gold texts in first-seen order.
std::vector<std::string> semi_gold_references(std::span<const GeneratedAnswer> semi_gold);

/// Compares a RAG answer with the semi-gold answers of the same question.
/// Throws PreconditionError when no usable semi-gold answer exists.
Verdict reteval_verdict(const Judge& judge, std::string_view question,
                        const GeneratedAnswer& rag_answer,
                        std::span<const GeneratedAnswer> semi_gold,
                        ReferenceMode mode = ReferenceMode::MultiReference);

inline bool llm_reteval_verdict(const Judge& judge, std::string_view question,
                                const GeneratedAnswer& rag_answer,
                                std::span<const GeneratedAnswer> semi_gold,
                                ReferenceMode mode = ReferenceMode::MultiReference) {
  return reteval_verdict(judge, question, rag_answer, semi_gold, mode).decision;
}

/// Records whose failure class is neither ConventionalMetricFailure nor Both.
std::vector<QuestionEvalRecord> refine(std::span<const QuestionEvalRecord> records);

struct KReport {
  std::size_t k = 0;
  std::size_t records = 0;
  /// recall_hit != end_to_end (ConventionalMetricFailure + Both)
  std::size_t recall_failures = 0;
  /// llm_reteval != end_to_end (RetEvalFailure + Both)
  std::size_t reteval_failures = 0;
  std::array<std::size_t, 4> class_counts{};  ///< indexed by FailureClass
  std::size_t miss_but_correct = 0;
  std::size_t hit_but_wrong = 0;
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
  double mrr = 0.0;
  double ndcg = 0.0;
  double llm_reteval_rate = 0.0;
  double end_to_end_rate = 0.0;
  /// Spearman(llm_reteval, recall_hit), booleans encoded as 1/0.
  CorrelationResult all;
  CorrelationResult refined;
};

struct EvalReport {
  std::size_t questions = 0;
  std::vector<KReport> per_k;
  std::vector<std::string> excluded_questions;
};

/// Aggregates per k. Every question present must have exactly one record
/// for each k in `k_values` (PreconditionError otherwise). Undefined
/// correlations are recorded, not thrown.
EvalReport build_report(std::span<const QuestionEvalRecord> records,
                        std::span<const std::size_t> k_values);

json to_json(const QuestionEvalRecord& record);
json to_json(const EvalReport& report);
std::string to_csv(const EvalReport& report);

}  // namespace reteval
