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

#include "reteval/corpus.h"

namespace reteval {

/// Answer-generation prompt. `{question}` appears twice, `{context}` once.
inline constexpr std::string_view kAnswerPromptTemplate =
    "Please read the question provided below and then review the accompanying document "
    "excerpts. Your task is to answer the question using the information from the documents:\n"
    "Question: {question}\n"
    "\n"
    "Relevant Document chunks:\n"
    "{context}\n"
    "\n"
    "After considering the information in the documents, please provide an answer (maximum 5 "
    "tokens) to the question: {question}.\n"
    "Answer:";

/// Answer-comparison prompt. Trailing spaces on four lines are part of the
/// template.
inline constexpr std::string_view kJudgePromptTemplate =
    "You are CompareGPT, a machine to verify the correctness of predictions. Answer with only "
    "\"Yes\" or \"No\". \n"
    "You are given a question, one or more corresponding ground-truth answers, and a prediction "
    "from a model. Compare the \"Ground-truth answers\" and the \"Prediction\" to determine "
    "whether the prediction correctly answers the question based on any of the provided "
    "ground-truth answers. \n"
    "All information in at least one of the ground-truth answers must be present in the "
    "prediction, including numbers and dates. You must answer \"No\" if the prediction does not "
    "completely match at least one set of specific details in the ground-truth answers. \n"
    "There should be no contradicting statements in the prediction. The prediction may contain "
    "extra information that does not contradict the ground-truth answers.\n"
    "\n"
    "Question: {query} \n"
    "Ground-truth answers: {answer}\n"
    "Prediction: {result}\n"
    "\n"
    "Answer \"Yes\" if the prediction correctly answers the question based on any of the "
    "Ground-truth answers, otherwise answer \"No\"..";

/// Numbered context block: one "[i] title: text" line per chunk, 1-based,
/// in the given order, joined by "\n".
std::string format_context(std::span<const Chunk> chunks);

/// Throws PreconditionError when `chunks` is empty.
std::string render_answer_prompt(std::string_view question, std::span<const Chunk> chunks);

/// References as JSON string literals joined by ", ", e.g. `"a", "b \"c\""`.
std::string format_reference_list(std::span<const std::string> references);

/// Throws PreconditionError when `references` is empty.
std::string render_judge_prompt(std::string_view question,
                                std::span<const std::string> references,
                                std::string_view prediction);

struct ParsedAnswerPrompt {
  std::string question;
  std::string context;
};

struct ParsedJudgePrompt {
  std::string question;
  std::vector<std::string> references;
  std::string prediction;
};

/// Inverse of the renderers, for offline mock providers. nullopt when the
/// text was not produced by the corresponding template.
std::optional<ParsedAnswerPrompt> parse_answer_prompt(std::string_view prompt);
std::optional<ParsedJudgePrompt> parse_judge_prompt(std::string_view prompt);

}  // namespace reteval
