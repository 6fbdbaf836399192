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

#include "reteval/prompts.h"

#include <map>

#include "reteval/errors.h"
#include "reteval/io.h"

namespace reteval {

namespace {

// Single left-to-right pass, so placeholder-like text inside substituted
// values is never expanded again.
std::string substitute(std::string_view tmpl, const std::map<std::string_view, std::string_view>& values) {
  std::string out;
  out.reserve(tmpl.size() + 256);
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      const auto close = tmpl.find('}', i);
      if (close != std::string_view::npos) {
        auto it = values.find(tmpl.substr(i + 1, close - i - 1));
        if (it != values.end()) {
          out.append(it->second);
          i = close + 1;
          continue;
        }
      }
    }
    out.push_back(tmpl[i++]);
  }
  return out;
}

// Splits a template at `{name}` into the literal before and after it.
std::pair<std::string_view, std::string_view> around(std::string_view tmpl, std::string_view name) {
  const std::string placeholder = "{" + std::string(name) + "}";
  const auto at = tmpl.find(placeholder);
  return {tmpl.substr(0, at), tmpl.substr(at + placeholder.size())};
}

}  // namespace

std::string format_context(std::span<const Chunk> chunks) {
  std::string out;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    if (i > 0) out.push_back('\n');
    out += "[" + std::to_string(i + 1) + "] " + chunks[i].title + ": " + chunks[i].text;
  }
  return out;
}

std::string render_answer_prompt(std::string_view question, std::span<const Chunk> chunks) {
  if (chunks.empty()) throw PreconditionError("render_answer_prompt: no chunks");
  const std::string context = format_context(chunks);
  return substitute(kAnswerPromptTemplate, {{"question", question}, {"context", context}});
}

std::string format_reference_list(std::span<const std::string> references) {
  std::string out;
  for (std::size_t i = 0; i < references.size(); ++i) {
    if (i > 0) out += ", ";
    out += json(references[i]).dump();
  }
  return out;
}

std::string render_judge_prompt(std::string_view question, std::span<const std::string> references,
                                std::string_view prediction) {
  if (references.empty()) throw PreconditionError("render_judge_prompt: no references");
  const std::string answer = format_reference_list(references);
  return substitute(kJudgePromptTemplate,
                    {{"query", question}, {"answer", answer}, {"result", prediction}});
}

std::optional<ParsedAnswerPrompt> parse_answer_prompt(std::string_view prompt) {
  const auto [head, rest] = around(kAnswerPromptTemplate, "question");
  const auto [mid, tail_with_q] = around(rest, "context");
  const auto [tail, after] = around(tail_with_q, "question");
  if (!prompt.starts_with(head) || !prompt.ends_with(after)) return std::nullopt;
  prompt.remove_prefix(head.size());
  prompt.remove_suffix(after.size());
  const auto mid_at = prompt.find(mid);
  if (mid_at == std::string_view::npos) return std::nullopt;
  ParsedAnswerPrompt parsed;
  parsed.question = std::string(prompt.substr(0, mid_at));
  prompt.remove_prefix(mid_at + mid.size());
  const auto tail_at = prompt.rfind(tail);
  if (tail_at == std::string_view::npos) return std::nullopt;
  parsed.context = std::string(prompt.substr(0, tail_at));
  return parsed;
}

std::optional<ParsedJudgePrompt> parse_judge_prompt(std::string_view prompt) {
  const auto [head, rest] = around(kJudgePromptTemplate, "query");
  const auto [q_to_a, rest2] = around(rest, "answer");
  const auto [a_to_r, tail] = around(rest2, "result");
  if (!prompt.starts_with(head) || !prompt.ends_with(tail)) return std::nullopt;
  prompt.remove_prefix(head.size());
  prompt.remove_suffix(tail.size());
  const auto qa = prompt.find(q_to_a);
  if (qa == std::string_view::npos) return std::nullopt;
  ParsedJudgePrompt parsed;
  parsed.question = std::string(prompt.substr(0, qa));
  prompt.remove_prefix(qa + q_to_a.size());
  const auto ar = prompt.find(a_to_r);
  if (ar == std::string_view::npos) return std::nullopt;
  try {
    const auto refs = json::parse("[" + std::string(prompt.substr(0, ar)) + "]");
    for (const auto& r : refs) parsed.references.push_back(r.get<std::string>());
  } catch (const json::exception&) {
    return std::nullopt;
  }
  parsed.prediction = std::string(prompt.substr(ar + a_to_r.size()));
  return parsed;
}

}  // namespace reteval
