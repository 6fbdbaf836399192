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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reteval/completion.h"
#include "reteval/embedding.h"
#include "reteval/io.h"

namespace reteval {

enum class Comparator { LlmJudge, ExactMatch, TokenOverlap, EmbeddingSim };

std::string_view to_string(Comparator comparator);
/// Accepts "llm", "exact", "token_overlap", "embedding".
Comparator parse_comparator(std::string_view name);

/// What to do when an LLM judge answers something other than Yes/No.
enum class JudgeParseFallback { Fail, TreatAsNo };

/// How several semi-gold samples are compared against a prediction: one
/// judge call listing all of them, or one call per sample OR-ed together.
enum class ReferenceMode { MultiReference, Separate };

struct Verdict {
  std::string question_id;
  Comparator comparator = Comparator::LlmJudge;
  bool decision = false;
  std::string raw_output;  ///< verbatim judge reply (LLM judge only)
  std::vector<std::string> references;
  std::string prediction;
  /// Best similarity over references (token F1 or cosine); unset otherwise.
  std::optional<double> score;
  /// Set when the decision came from a fallback instead of a clean reply.
  std::string flag;
};

/// True/false iff the first alphabetic token of `raw`, case-folded, is
/// "yes"/"no"; nullopt otherwise.
std::optional<bool> parse_yes_no(std::string_view raw);

/// Renders the comparison prompt, queries `provider` at temperature 0 and
/// parses the reply. A reply that is neither Yes nor No throws
/// JudgeParseError under JudgeParseFallback::Fail, else yields a flagged No.
Verdict judge_llm(CompletionProvider& provider, std::string_view question,
                  std::span<const std::string> references, std::string_view prediction,
                  JudgeParseFallback fallback = JudgeParseFallback::Fail, int max_tokens = 8);

/// normalize_answer(prediction) == normalize_answer(r) for some reference r.
bool judge_exact(std::string_view prediction, std::span<const std::string> references);

/// Unigram F1 (multiset overlap) between normalized strings. 0 when either
/// side is empty after normalization.
double token_f1(std::string_view prediction, std::string_view reference);

/// max over references of token_f1 >= threshold; threshold in (0, 1].
bool judge_token_overlap(std::string_view prediction, std::span<const std::string> references,
                         double threshold);

/// max over references of cosine(embed(prediction), embed(r)) >= threshold;
/// threshold in (-1, 1]. Zero embeddings raise DomainError.
bool judge_embedding(EmbeddingProvider& provider, std::string_view prediction,
                     std::span<const std::string> references, double threshold);

struct JudgeOptions {
  Comparator comparator = Comparator::LlmJudge;
  double token_overlap_threshold = 0.5;
  double embedding_threshold = 0.85;
  JudgeParseFallback parse_fallback = JudgeParseFallback::Fail;
  int llm_max_tokens = 8;

  void validate() const;
};

/// Dispatches to the configured comparator. Any-match semantics across
/// references for every comparator.
class Judge {
 public:
  /// `llm` is required for LlmJudge, `embedder` for EmbeddingSim.
  Judge(JudgeOptions options, CompletionProvider* llm, EmbeddingProvider* embedder);

  const JudgeOptions& options() const { return options_; }

  Verdict decide(std::string_view question_id, std::string_view question,
                 std::span<const std::string> references, std::string_view prediction) const;

 private:
  JudgeOptions options_;
  CompletionProvider* llm_;
  EmbeddingProvider* embedder_;
};

json to_json(const Verdict& verdict);

}  // namespace reteval
