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

#include "reteval/mock_providers.h"

#include "reteval/errors.h"
#include "reteval/prompts.h"
#include "reteval/text.h"

namespace reteval {

MockOracleGenerator::MockOracleGenerator(std::span<const Question> questions, std::string model_id)
    : model_(std::move(model_id)) {
  for (const auto& q : questions) answers_by_question_.try_emplace(q.text, q.gold_answers);
}

std::string MockOracleGenerator::complete(const CompletionRequest& request) {
  ++calls_;
  const auto parsed = parse_answer_prompt(request.prompt);
  if (!parsed) throw ProviderError("mock generator: unrecognized prompt");
  auto it = answers_by_question_.find(parsed->question);
  if (it != answers_by_question_.end()) {
    for (const auto& answer : it->second) {
      if (!answer.empty() && parsed->context.find(answer) != std::string::npos) return answer;
    }
  }
  return std::string(kUnknown);
}

std::string MockJudge::complete(const CompletionRequest& request) {
  ++calls_;
  const auto parsed = parse_judge_prompt(request.prompt);
  if (!parsed) throw ProviderError("mock judge: unrecognized prompt");
  const auto prediction = normalize_answer(parsed->prediction);
  for (const auto& ref : parsed->references) {
    if (normalize_answer(ref) == prediction) return "Yes";
  }
  return "No";
}

}  // namespace reteval
