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

#include <gtest/gtest.h>

#include "fake_providers.h"
#include "reteval/errors.h"
#include "reteval/mock_providers.h"

namespace reteval {
namespace {

using testing_support::ScriptedCompletion;

Chunk chunk(std::string id, std::string text) { return {id, id.substr(0, id.find('#')), "T", std::move(text), 1}; }

const Question kTulsa{"q1", "where was the first black wall street located",
                      {"Tulsa, Oklahoma", "Tulsa"}, {"g#0"}};

TEST(MockOracle, ReturnsGoldAnswerPresentInContext) {
  const std::vector<Question> qs{kTulsa};
  MockOracleGenerator oracle(qs);
  const std::vector<Chunk> chunks{chunk("x#0", "unrelated"),
                                  chunk("g#0", "Greenwood in Tulsa, Oklahoma was prosperous.")};
  const auto answers = generate_answers(GeneratorProfile::rag_defaults(), oracle, kTulsa, chunks,
                                        AnswerSource::Retrieved);
  ASSERT_EQ(answers.size(), 1u);
  EXPECT_EQ(answers[0].text, "Tulsa, Oklahoma");
  EXPECT_EQ(answers[0].source, AnswerSource::Retrieved);
  EXPECT_EQ(answers[0].model_id, "mock-oracle");
}

TEST(MockOracle, UnknownWhenNoAnswerInContext) {
  const std::vector<Question> qs{kTulsa};
  MockOracleGenerator oracle(qs);
  const std::vector<Chunk> chunks{chunk("x#0", "Nigeria, delta basin")};
  const auto answers = generate_answers(GeneratorProfile::rag_defaults(), oracle, kTulsa, chunks,
                                        AnswerSource::Retrieved);
  EXPECT_EQ(answers[0].text, "UNKNOWN");
}

TEST(GenerateAnswers, OneAnswerPerSample) {
  const std::vector<Question> qs{kTulsa};
  MockOracleGenerator oracle(qs);
  auto profile = GeneratorProfile::semi_gold_defaults();
  EXPECT_EQ(profile.samples, 3);
  EXPECT_DOUBLE_EQ(profile.temperature, 0.5);
  const std::vector<Chunk> chunks{chunk("g#0", "Tulsa")};
  for (int samples : {1, 2, 3, 7}) {
    profile.samples = samples;
    const auto answers = generate_answers(profile, oracle, kTulsa, chunks, AnswerSource::Gold);
    ASSERT_EQ(answers.size(), static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
      EXPECT_EQ(answers[i].sample_index, i);
      EXPECT_EQ(answers[i].source, AnswerSource::Gold);
      EXPECT_DOUBLE_EQ(answers[i].temperature, 0.5);
    }
  }
}

TEST(GenerateAnswers, PassesSamplingParametersToProvider) {
  ScriptedCompletion p([](const CompletionRequest&) { return "  Tulsa \n"; });
  GeneratorProfile profile{"p", "m", 0.5, 3, 12};
  const std::vector<Chunk> chunks{chunk("g#0", "Tulsa")};
  const auto answers = generate_answers(profile, p, kTulsa, chunks, AnswerSource::Gold);
  EXPECT_EQ(answers[2].text, "Tulsa");
  const auto reqs = p.requests();
  ASSERT_EQ(reqs.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(reqs[i].sample_index, i);
    EXPECT_DOUBLE_EQ(reqs[i].temperature, 0.5);
    EXPECT_EQ(reqs[i].max_tokens, 12);
  }
  EXPECT_EQ(reqs[0].prompt, reqs[1].prompt);
}

TEST(GenerateAnswers, EmptyReplyIsFlagged) {
  ScriptedCompletion p([](const CompletionRequest&) { return " \n "; });
  const std::vector<Chunk> chunks{chunk("g#0", "Tulsa")};
  const auto answers = generate_answers(GeneratorProfile::rag_defaults(), p, kTulsa, chunks,
                                        AnswerSource::Retrieved);
  EXPECT_EQ(answers[0].text, "");
  EXPECT_EQ(answers[0].flag, "empty");
  EXPECT_FALSE(answers[0].failed());
}

TEST(GenerateAnswers, Preconditions) {
  ScriptedCompletion p([](const CompletionRequest&) { return "x"; });
  EXPECT_THROW(generate_answers(GeneratorProfile::rag_defaults(), p, kTulsa, std::vector<Chunk>{},
                                AnswerSource::Retrieved),
               PreconditionError);
  GeneratorProfile bad;
  bad.samples = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = {};
  bad.temperature = -0.1;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(GenerateAnswers, ProviderErrorsPropagate) {
  ScriptedCompletion p([](const CompletionRequest&) -> std::string { throw ProviderError("down"); });
  const std::vector<Chunk> chunks{chunk("g#0", "Tulsa")};
  EXPECT_THROW(generate_answers(GeneratorProfile::rag_defaults(), p, kTulsa, chunks,
                                AnswerSource::Retrieved),
               ProviderError);
}

TEST(SemiGold, AnswersFromGoldChunks) {
  const std::vector<Question> qs{kTulsa};
  MockOracleGenerator oracle(qs);
  const ChunkStore store({chunk("g#0", "The district was in Tulsa, Oklahoma."), chunk("x#0", "Tulsa")});
  const auto answers = generate_semi_gold(GeneratorProfile::semi_gold_defaults(), oracle, kTulsa, store);
  ASSERT_EQ(answers.size(), 3u);
  for (const auto& a : answers) {
    EXPECT_EQ(a.text, "Tulsa, Oklahoma");
    EXPECT_EQ(a.source, AnswerSource::Gold);
    EXPECT_FALSE(a.k.has_value());
  }
}

TEST(SemiGold, GoldChunkWithoutAnswerGivesUnknown) {
  const std::vector<Question> qs{kTulsa};
  MockOracleGenerator oracle(qs);
  const ChunkStore store({chunk("g#0", "A district known for commerce.")});
  const auto answers = generate_semi_gold(GeneratorProfile::semi_gold_defaults(), oracle, kTulsa, store);
  for (const auto& a : answers) EXPECT_EQ(a.text, "UNKNOWN");
}

TEST(SemiGold, GoldIdErrors) {
  const std::vector<Question> qs{kTulsa};
  MockOracleGenerator oracle(qs);
  const ChunkStore store({chunk("g#0", "Tulsa")});
  Question none = kTulsa;
  none.gold_chunk_ids.clear();
  EXPECT_THROW(generate_semi_gold(GeneratorProfile::semi_gold_defaults(), oracle, none, store),
               PreconditionError);
  Question missing = kTulsa;
  missing.gold_chunk_ids = {"nope#0"};
  EXPECT_THROW(generate_semi_gold(GeneratorProfile::semi_gold_defaults(), oracle, missing, store),
               IntegrityError);
}

TEST(SemiGold, RetrievedAnswerEqualsSomeSemiGoldAnswerUnderOracle) {
  const std::vector<Question> qs{kTulsa};
  MockOracleGenerator oracle(qs);
  const ChunkStore store({chunk("g#0", "Greenwood, Tulsa, Oklahoma"), chunk("x#0", "noise")});
  const std::vector<Chunk> retrieved{store.at("x#0"), store.at("g#0")};
  const auto rag = generate_answers(GeneratorProfile::rag_defaults(), oracle, kTulsa, retrieved,
                                    AnswerSource::Retrieved);
  const auto semi = generate_semi_gold(GeneratorProfile::semi_gold_defaults(), oracle, kTulsa, store);
  bool found = false;
  for (const auto& a : semi) found = found || a.text == rag[0].text;
  EXPECT_TRUE(found);
}

TEST(AnswerJson, RoundTripsAndSorts) {
  GeneratedAnswer a{"q2", AnswerSource::Retrieved, "x", 0, "m", 0.0, 5, "", ""};
  GeneratedAnswer b{"q1", AnswerSource::Gold, "", 2, "m", 0.5, std::nullopt, "empty", ""};
  GeneratedAnswer c{"q1", AnswerSource::Gold, "", 1, "m", 0.5, std::nullopt, "", "timeout"};
  for (const auto& x : {a, b, c}) EXPECT_EQ(answer_from_json(to_json(x)), x);
  const auto j = to_json(a);
  for (const char* key : {"question_id", "source", "sample_index", "text", "model", "temperature"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["source"], "retrieved");
  std::vector<GeneratedAnswer> v{a, b, c};
  sort_answers(v);
  EXPECT_EQ(v[0], c);
  EXPECT_EQ(v[1], b);
  EXPECT_EQ(v[2], a);
}

}  // namespace
}  // namespace reteval
