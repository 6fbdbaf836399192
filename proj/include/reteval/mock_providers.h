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

#include <atomic>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "reteval/completion.h"
#include "reteval/corpus.h"

namespace reteval {

/// Offline stand-in for the answer generator. Reads the question and context
/// back out of an answer prompt and returns the first gold answer of that
/// question occurring verbatim in the context, or "UNKNOWN".
class MockOracleGenerator final : public CompletionProvider {
 public:
  static constexpr std::string_view kUnknown = "UNKNOWN";

  explicit MockOracleGenerator(std::span<const Question> questions,
                               std::string model_id = "mock-oracle");

  std::string provider_id() const override { return "mock"; }
  std::string model_id() const override { return model_; }
  std::string complete(const CompletionRequest& request) override;

  std::size_t calls() const { return calls_.load(); }

 private:
  std::unordered_map<std::string, std::vector<std::string>> answers_by_question_;
  std::string model_;
  std::atomic<std::size_t> calls_{0};
};

/// Offline stand-in for the LLM judge: "Yes" iff the prediction equals some
/// reference after normalize_answer(), else "No".
class MockJudge final : public CompletionProvider {
 public:
  explicit MockJudge(std::string model_id = "mock-judge") : model_(std::move(model_id)) {}

  std::string provider_id() const override { return "mock"; }
  std::string model_id() const override { return model_; }
  std::string complete(const CompletionRequest& request) override;

  std::size_t calls() const { return calls_.load(); }

 private:
  std::string model_;
  std::atomic<std::size_t> calls_{0};
};

}  // namespace reteval
