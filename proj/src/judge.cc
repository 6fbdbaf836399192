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

#include "reteval/judge.h"

#include <algorithm>
#include <cctype>
#include <map>

#include "reteval/errors.h"
#include "reteval/prompts.h"
#include "reteval/text.h"

namespace reteval {

namespace {

void require_references(std::span<const std::string> references, const char* who) {
  if (references.empty()) throw PreconditionError(std::string(who) + ": no references");
}

}  // namespace

std::string_view to_string(Comparator comparator) {
  switch (comparator) {
    case Comparator::LlmJudge: return "llm";
    case Comparator::ExactMatch: return "exact";
    case Comparator::TokenOverlap: return "token_overlap";
    case Comparator::EmbeddingSim: return "embedding";
  }
  return "?";
}

Comparator parse_comparator(std::string_view name) {
  if (name == "llm") return Comparator::LlmJudge;
  if (name == "exact") return Comparator::ExactMatch;
  if (name == "token_overlap") return Comparator::TokenOverlap;
  if (name == "embedding") return Comparator::EmbeddingSim;
  throw ConfigError("unknown comparator \"" + std::string(name) +
                    "\" (expected llm, exact, token_overlap or embedding)");
}

std::optional<bool> parse_yes_no(std::string_view raw) {
  std::size_t i = 0;
  while (i < raw.size() && !std::isalpha(static_cast<unsigned char>(raw[i]))) ++i;
  std::string token;
  while (i < raw.size() && std::isalpha(static_cast<unsigned char>(raw[i]))) {
    token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(raw[i++]))));
  }
  if (token == "yes") return true;
  if (token == "no") return false;
  return std::nullopt;
}

Verdict judge_llm(CompletionProvider& provider, std::string_view question,
                  std::span<const std::string> references, std::string_view prediction,
                  JudgeParseFallback fallback, int max_tokens) {
  require_references(references, "judge_llm");
  Verdict v;
  v.comparator = Comparator::LlmJudge;
  v.references.assign(references.begin(), references.end());
  v.prediction = std::string(prediction);
  v.raw_output = provider.complete({render_judge_prompt(question, references, prediction), 0.0,
                                    max_tokens, 0});
  if (auto decision = parse_yes_no(v.raw_output)) {
    v.decision = *decision;
  } else if (fallback == JudgeParseFallback::TreatAsNo) {
    v.decision = false;
    v.flag = "unparseable";
  } else {
    throw JudgeParseError("judge reply is neither Yes nor No: \"" + v.raw_output.substr(0, 80) + "\"",
                          v.raw_output);
  }
  return v;
}

bool judge_exact(std::string_view prediction, std::span<const std::string> references) {
  require_references(references, "judge_exact");
  const auto p = normalize_answer(prediction);
  return std::any_of(references.begin(), references.end(),
                     [&](const std::string& r) { return normalize_answer(r) == p; });
}

double token_f1(std::string_view prediction, std::string_view reference) {
  const auto p = whitespace_tokenize(normalize_answer(prediction));
  const auto r = whitespace_tokenize(normalize_answer(reference));
  if (p.empty() || r.empty()) return 0.0;
  std::map<std::string_view, int> counts;
  for (const auto& t : r) ++counts[t];
  std::size_t common = 0;
  for (const auto& t : p) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  const double precision = static_cast<double>(common) / static_cast<double>(p.size());
  const double recall = static_cast<double>(common) / static_cast<double>(r.size());
  return 2.0 * precision * recall / (precision + recall);
}

namespace {

double best_token_f1(std::string_view prediction, std::span<const std::string> references) {
  double best = 0.0;
  for (const auto& r : references) best = std::max(best, token_f1(prediction, r));
  return best;
}

double best_cosine(EmbeddingProvider& provider, std::string_view prediction,
                   std::span<const std::string> references) {
  std::vector<std::string> texts{std::string(prediction)};
  texts.insert(texts.end(), references.begin(), references.end());
  const auto vecs = provider.embed(texts, EmbedKind::Passage);
  double best = -1.0;
  for (std::size_t i = 1; i < vecs.size(); ++i) best = std::max(best, cosine(vecs[0], vecs[i]));
  return best;
}

void check_token_threshold(double t) {
  if (!(t > 0.0 && t <= 1.0)) throw PreconditionError("token-overlap threshold must be in (0, 1]");
}

void check_embedding_threshold(double t) {
  if (!(t > -1.0 && t <= 1.0)) throw PreconditionError("embedding threshold must be in (-1, 1]");
}

}  // namespace

bool judge_token_overlap(std::string_view prediction, std::span<const std::string> references,
                         double threshold) {
  require_references(references, "judge_token_overlap");
  check_token_threshold(threshold);
  return best_token_f1(prediction, references) >= threshold;
}

bool judge_embedding(EmbeddingProvider& provider, std::string_view prediction,
                     std::span<const std::string> references, double threshold) {
  require_references(references, "judge_embedding");
  check_embedding_threshold(threshold);
  return best_cosine(provider, prediction, references) >= threshold;
}

void JudgeOptions::validate() const {
  try {
    check_token_threshold(token_overlap_threshold);
    check_embedding_threshold(embedding_threshold);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  if (llm_max_tokens < 1) throw ConfigError("judge max tokens must be >= 1");
}

Judge::Judge(JudgeOptions options, CompletionProvider* llm, EmbeddingProvider* embedder)
    : options_(options), llm_(llm), embedder_(embedder) {
  options_.validate();
  if (options_.comparator == Comparator::LlmJudge && llm_ == nullptr) {
    throw ConfigError("llm comparator requires a judge provider");
  }
  if (options_.comparator == Comparator::EmbeddingSim && embedder_ == nullptr) {
    throw ConfigError("embedding comparator requires an embedding provider");
  }
}

Verdict Judge::decide(std::string_view question_id, std::string_view question,
                      std::span<const std::string> references, std::string_view prediction) const {
  Verdict v;
  switch (options_.comparator) {
    case Comparator::LlmJudge:
      v = judge_llm(*llm_, question, references, prediction, options_.parse_fallback,
                    options_.llm_max_tokens);
      break;
    case Comparator::ExactMatch:
      v.decision = judge_exact(prediction, references);
      break;
    case Comparator::TokenOverlap:
      require_references(references, "judge_token_overlap");
      v.score = best_token_f1(prediction, references);
      v.decision = *v.score >= options_.token_overlap_threshold;
      break;
    case Comparator::EmbeddingSim:
      require_references(references, "judge_embedding");
      v.score = best_cosine(*embedder_, prediction, references);
      v.decision = *v.score >= options_.embedding_threshold;
      break;
  }
  v.question_id = std::string(question_id);
  v.comparator = options_.comparator;
  v.references.assign(references.begin(), references.end());
  v.prediction = std::string(prediction);
  return v;
}

json to_json(const Verdict& v) {
  json j = {{"question_id", v.question_id},
            {"comparator", to_string(v.comparator)},
            {"decision", v.decision},
            {"references", v.references},
            {"prediction", v.prediction},
            {"raw_output", v.raw_output}};
  if (v.score) j["score"] = *v.score;
  if (!v.flag.empty()) j["flag"] = v.flag;
  return j;
}

}  // namespace reteval
