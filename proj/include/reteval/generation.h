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
#include "reteval/corpus.h"
#include "reteval/io.h"

namespace reteval {

enum class AnswerSource { Retrieved, Gold };

std::string_view to_string(AnswerSource source);
AnswerSource parse_answer_source(std::string_view s);

struct GeneratorProfile {
  std::string provider_id;
  std::string model_id;
  double temperature = 0.0;
  int samples = 1;
  int max_answer_tokens = 16;

  /// System under test: one deterministic sample.
  static GeneratorProfile rag_defaults() { return {}; }
  /// Reference answers from gold chunks: three samples at temperature 0.5.
  static GeneratorProfile semi_gold_defaults() { return {"", "", 0.5, 3, 16}; }

  void validate() const;
};

struct GeneratedAnswer {
  std::string question_id;
  AnswerSource source = AnswerSource::Retrieved;
  std::string text;  ///< provider output, surrounding whitespace trimmed
  int sample_index = 0;
  std::string model_id;
  double temperature = 0.0;
  /// Retrieval cutoff the context came from; unset for Gold answers.
  std::optional<std::size_t> k;
  /// "empty" when the provider returned only whitespace.
  std::string flag;
  /// Provider failure message; `text` is meaningless when set.
  std::string error;

  bool failed() const { return !error.empty(); }
  bool operator==(const GeneratedAnswer&) const = default;
};

/// Renders one answer prompt over `chunks` (all at once, in order) and
/// samples it `profile.samples` times. Throws PreconditionError on empty
/// chunks; provider errors propagate.
std::vector<GeneratedAnswer> generate_answers(const GeneratorProfile& profile,
                                              CompletionProvider& provider,
                                              const Question& question,
                                              std::span<const Chunk> chunks, AnswerSource source);

/// generate_answers over the question's gold chunks (in gold_chunk_ids
/// order) with source Gold. All samples are kept, duplicates included.
std::vector<GeneratedAnswer> generate_semi_gold(const GeneratorProfile& profile,
                                                CompletionProvider& provider,
                                                const Question& question, const ChunkStore& store);

json to_json(const GeneratedAnswer& answer);
GeneratedAnswer answer_from_json(const json& record, std::size_t line = 0);

/// Canonical persistence order: (question_id, k, sample_index).
void sort_answers(std::vector<GeneratedAnswer>& answers);

}  // namespace reteval
