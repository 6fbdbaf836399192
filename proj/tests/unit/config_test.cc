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

#include "reteval/config.h"

#include <gtest/gtest.h>

#include "reteval/errors.h"
#include "temp_dir.h"

namespace reteval {
namespace {

namespace fs = std::filesystem;

RunConfig parse(const std::string& text, const fs::path& base = "/base") {
  return RunConfig::from_json(json::parse(text), base);
}

TEST(RunConfig, Defaults) {
  const auto c = parse(R"({"dataset": "d.jsonl", "corpus": "c.jsonl"})");
  EXPECT_EQ(c.k_values, (std::vector<std::size_t>{1, 5, 10}));
  EXPECT_EQ(c.chunking.max_tokens, 100u);
  EXPECT_EQ(c.chunking.overlap, 0u);
  EXPECT_EQ(c.semigold.samples, 3);
  EXPECT_DOUBLE_EQ(c.semigold.temperature, 0.5);
  EXPECT_EQ(c.rag.samples, 1);
  EXPECT_DOUBLE_EQ(c.rag.temperature, 0.0);
  EXPECT_EQ(c.judge.options.comparator, Comparator::LlmJudge);
  EXPECT_EQ(c.judge.references, ReferenceMode::MultiReference);
  EXPECT_DOUBLE_EQ(c.judge.options.token_overlap_threshold, 0.5);
  EXPECT_DOUBLE_EQ(c.judge.options.embedding_threshold, 0.85);
  EXPECT_TRUE(c.providers.contains("mock"));
  EXPECT_FALSE(c.mock);
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.max_k(), 10u);
}

TEST(RunConfig, RelativePathsResolveAgainstConfigDirectory) {
  const auto c = parse(R"({"dataset": "d.jsonl", "corpus": "/abs/c.jsonl", "out_dir": "o"})");
  EXPECT_EQ(c.dataset, fs::path("/base/d.jsonl"));
  EXPECT_EQ(c.corpus, fs::path("/abs/c.jsonl"));
  EXPECT_EQ(c.out_dir, fs::path("/base/o"));
}

TEST(RunConfig, FullDocument) {
  const auto c = parse(R"({
    "dataset": "d", "corpus": "c", "k": [1, 3],
    "chunking": {"max_tokens": 64, "overlap": 8},
    "providers": {"openai": {"type": "openai", "base_url": "https://api.example.com/v1",
                             "api_key_env": "KEY", "retry": {"max_attempts": 2}}},
    "embedder": {"provider": "openai", "model": "text-embedding-3-small",
                 "query_prefix": "query: ", "passage_prefix": "passage: "},
    "rag": {"provider": "openai", "model": "gpt-4", "temperature": 0},
    "semigold": {"provider": "openai", "model": "gpt-4", "samples": 3, "temperature": 0.5},
    "judge": {"provider": "openai", "model": "gpt-4", "comparator": "token_overlap",
              "token_overlap_threshold": 0.6, "references": "separate", "on_unparseable": "no"},
    "concurrency": 8, "failure_budget": 0.05, "mock": true
  })");
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.providers.at("openai").retry.max_attempts, 2);
  EXPECT_EQ(c.embedder.query_prefix, "query: ");
  EXPECT_EQ(c.judge.options.comparator, Comparator::TokenOverlap);
  EXPECT_EQ(c.judge.references, ReferenceMode::Separate);
  EXPECT_EQ(c.judge.options.parse_fallback, JudgeParseFallback::TreatAsNo);
  EXPECT_EQ(c.chunking.overlap, 8u);
  EXPECT_TRUE(c.mock);
  // Round trip through the canonical form keeps the hash.
  const auto again = RunConfig::from_json(c.to_json(), "/elsewhere");
  EXPECT_EQ(again.hash(), c.hash());
}

TEST(RunConfig, RejectsInvalidDocuments) {
  EXPECT_THROW(parse(R"({"dataset": "d", "corpus": "c", "colour": 1})"), ConfigError);
  EXPECT_THROW(parse(R"({"dataset": "d", "corpus": "c", "judge": {"refs": "x"}})"), ConfigError);
  EXPECT_THROW(parse(R"({"dataset": 3, "corpus": "c"})"), ConfigError);
  EXPECT_THROW(parse(R"({"dataset": "d", "corpus": "c", "judge": {"comparator": "bleu"}})"), ConfigError);
  EXPECT_THROW(parse(R"({"dataset": "d", "corpus": "c", "judge": {"references": "all"}})"), ConfigError);
}

TEST(RunConfig, ValidationRules) {
  const auto invalid = [](const std::string& text) {
    EXPECT_THROW(parse(text).validate(), ConfigError) << text;
  };
  invalid(R"({"corpus": "c"})");
  invalid(R"({"dataset": "d", "corpus": "c", "k": []})");
  invalid(R"({"dataset": "d", "corpus": "c", "k": [0, 1]})");
  invalid(R"({"dataset": "d", "corpus": "c", "k": [5, 5]})");
  invalid(R"({"dataset": "d", "corpus": "c", "chunking": {"max_tokens": 10, "overlap": 10}})");
  invalid(R"({"dataset": "d", "corpus": "c", "embedder": {"provider": "nowhere"}})");
  invalid(R"({"dataset": "d", "corpus": "c", "judge": {"provider": "nowhere"}})");
  invalid(R"({"dataset": "d", "corpus": "c", "providers": {"x": {"type": "openai"}}})");
  invalid(R"({"dataset": "d", "corpus": "c", "providers": {"x": {"type": "grpc", "base_url": "u"}}})");
  invalid(R"({"dataset": "d", "corpus": "c", "concurrency": 0})");
  invalid(R"({"dataset": "d", "corpus": "c", "failure_budget": 1.5})");
  invalid(R"({"dataset": "d", "corpus": "c", "semigold": {"samples": 0}})");
}

TEST(RunConfig, HashTracksContent) {
  const auto a = parse(R"({"dataset": "d", "corpus": "c"})");
  const auto b = parse(R"({"dataset": "d", "corpus": "c", "k": [1, 5]})");
  EXPECT_EQ(a.hash(), parse(R"({"dataset": "d", "corpus": "c"})").hash());
  EXPECT_NE(a.hash(), b.hash());
}

TEST(LoadConfig, FileErrors) {
  testing_support::TempDir dir;
  EXPECT_THROW(load_config(dir / "missing.json"), ConfigError);
  testing_support::write_text(dir / "bad.json", "{ nope");
  EXPECT_THROW(load_config(dir / "bad.json"), ConfigError);
  testing_support::write_text(dir / "ok.json", R"({"dataset": "d.jsonl", "corpus": "c.jsonl"})");
  EXPECT_EQ(load_config(dir / "ok.json").dataset, dir / "d.jsonl");
}

}  // namespace
}  // namespace reteval
