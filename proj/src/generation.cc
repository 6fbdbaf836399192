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

#include "reteval/generation.h"

#include <algorithm>
#include <tuple>

#include "reteval/errors.h"
#include "reteval/prompts.h"

namespace reteval {

namespace {

std::string trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

std::string_view to_string(AnswerSource source) {
  return source == AnswerSource::Retrieved ? "retrieved" : "gold";
}

AnswerSource parse_answer_source(std::string_view s) {
  if (s == "retrieved") return AnswerSource::Retrieved;
  if (s == "gold") return AnswerSource::Gold;
  throw ParseError("unknown answer source \"" + std::string(s) + "\"");
}

void GeneratorProfile::validate() const {
  if (samples < 1) throw ConfigError("generator profile: samples must be >= 1");
  if (temperature < 0) throw ConfigError("generator profile: temperature must be >= 0");
  if (max_answer_tokens < 1) throw ConfigError("generator profile: max answer tokens must be >= 1");
}

std::vector<GeneratedAnswer> generate_answers(const GeneratorProfile& profile,
                                              CompletionProvider& provider,
                                              const Question& question,
                                              std::span<const Chunk> chunks, AnswerSource source) {
  profile.validate();
  const std::string prompt = render_answer_prompt(question.text, chunks);
  std::vector<GeneratedAnswer> out;
  out.reserve(static_cast<std::size_t>(profile.samples));
  for (int s = 0; s < profile.samples; ++s) {
    GeneratedAnswer a;
    a.question_id = question.question_id;
    a.source = source;
    a.sample_index = s;
    a.model_id = provider.model_id();
    a.temperature = profile.temperature;
    a.text = trim(provider.complete({prompt, profile.temperature, profile.max_answer_tokens, s}));
    if (a.text.empty()) a.flag = "empty";
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<GeneratedAnswer> generate_semi_gold(const GeneratorProfile& profile,
                                                CompletionProvider& provider,
                                                const Question& question, const ChunkStore& store) {
  if (question.gold_chunk_ids.empty()) {
    throw PreconditionError("generate_semi_gold: question \"" + question.question_id +
                            "\" has no gold chunks");
  }
  std::vector<Chunk> gold;
  gold.reserve(question.gold_chunk_ids.size());
  for (const auto& id : question.gold_chunk_ids) gold.push_back(store.at(id));
  return generate_answers(profile, provider, question, gold, AnswerSource::Gold);
}

json to_json(const GeneratedAnswer& a) {
  json j = {{"question_id", a.question_id},
            {"source", to_string(a.source)},
            {"sample_index", a.sample_index},
            {"text", a.text},
            {"model", a.model_id},
            {"temperature", a.temperature}};
  if (a.k) j["k"] = *a.k;
  if (!a.flag.empty()) j["flag"] = a.flag;
  if (!a.error.empty()) j["error"] = a.error;
  return j;
}

GeneratedAnswer answer_from_json(const json& rec, std::size_t line) {
  GeneratedAnswer a;
  try {
    a.question_id = rec.at("question_id").get<std::string>();
    a.source = parse_answer_source(rec.at("source").get<std::string>());
    a.sample_index = rec.at("sample_index").get<int>();
    a.text = rec.at("text").get<std::string>();
    a.model_id = rec.at("model").get<std::string>();
    a.temperature = rec.at("temperature").get<double>();
    if (rec.contains("k")) a.k = rec.at("k").get<std::size_t>();
    a.flag = rec.value("flag", "");
    a.error = rec.value("error", "");
  } catch (const json::exception& e) {
    throw ParseError(std::string("answer record: ") + e.what(), line);
  }
  return a;
}

void sort_answers(std::vector<GeneratedAnswer>& answers) {
  std::stable_sort(answers.begin(), answers.end(), [](const auto& a, const auto& b) {
    return std::tie(a.question_id, a.k, a.sample_index) <
           std::tie(b.question_id, b.k, b.sample_index);
  });
}

}  // namespace reteval
