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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fake_providers.h"
#include "reteval/errors.h"
#include "reteval/mock_providers.h"
#include "reteval/prompts.h"
#include "reteval/text.h"

namespace reteval {
namespace {

using testing_support::ScriptedCompletion;
using testing_support::TableEmbedder;
using Refs = std::vector<std::string>;

TEST(ParseYesNo, FirstAlphabeticToken) {
  EXPECT_EQ(parse_yes_no("Yes"), true);
  EXPECT_EQ(parse_yes_no("  no."), false);
  EXPECT_EQ(parse_yes_no("**YES**, it matches"), true);
  EXPECT_EQ(parse_yes_no("\"No\""), false);
  EXPECT_EQ(parse_yes_no("1. Yes"), true);
  EXPECT_EQ(parse_yes_no("Maybe"), std::nullopt);
  EXPECT_EQ(parse_yes_no("Yesterday"), std::nullopt);
  EXPECT_EQ(parse_yes_no(""), std::nullopt);
}

TEST(JudgeLlm, MockJudgeMatchesNormalizedReference) {
  MockJudge judge;
  const auto yes = judge_llm(judge, "where?", Refs{"Tulsa, Oklahoma"}, "Tulsa, Oklahoma");
  EXPECT_TRUE(yes.decision);
  EXPECT_EQ(yes.raw_output, "Yes");
  EXPECT_EQ(yes.comparator, Comparator::LlmJudge);
  const auto no = judge_llm(judge, "where?", Refs{"Nigeria, delta basin"}, "Nigeria, Horn of Africa");
  EXPECT_FALSE(no.decision);
  EXPECT_EQ(no.raw_output, "No");
  EXPECT_EQ(judge.calls(), 2u);
}

TEST(JudgeLlm, UnparseableReplyFailsByDefault) {
  ScriptedCompletion p([](const CompletionRequest&) { return "Maybe"; });
  try {
    judge_llm(p, "q", Refs{"a"}, "b");
    FAIL() << "expected JudgeParseError";
  } catch (const JudgeParseError& e) {
    EXPECT_EQ(e.raw_output(), "Maybe");
  }
}

TEST(JudgeLlm, FallbackTreatsUnparseableAsFlaggedNo) {
  ScriptedCompletion p([](const CompletionRequest&) { return "Maybe"; });
  const auto v = judge_llm(p, "q", Refs{"a"}, "a", JudgeParseFallback::TreatAsNo);
  EXPECT_FALSE(v.decision);
  EXPECT_FALSE(v.flag.empty());
  EXPECT_EQ(v.raw_output, "Maybe");
}

TEST(JudgeLlm, UsesTemperatureZeroAndTheComparisonPrompt) {
  ScriptedCompletion p([](const CompletionRequest&) { return "No"; });
  judge_llm(p, "q?", Refs{"a", "b"}, "c");
  const auto reqs = p.requests();
  ASSERT_EQ(reqs.size(), 1u);
  EXPECT_EQ(reqs[0].temperature, 0.0);
  EXPECT_EQ(reqs[0].sample_index, 0);
  EXPECT_EQ(reqs[0].prompt, render_judge_prompt("q?", Refs{"a", "b"}, "c"));
  EXPECT_THROW(judge_llm(p, "q", Refs{}, "c"), PreconditionError);
}

TEST(JudgeExact, NormalizedEquality) {
  EXPECT_TRUE(judge_exact("Tulsa, Oklahoma", Refs{"Tulsa, Oklahoma"}));
  EXPECT_TRUE(judge_exact("the Delta Basin.", Refs{"delta basin"}));
  EXPECT_FALSE(judge_exact("Horn of Africa", Refs{"delta basin"}));
  EXPECT_TRUE(judge_exact("Horn of Africa", Refs{"delta basin", "horn of africa"}));
}

TEST(TokenF1, UnigramOverlap) {
  EXPECT_DOUBLE_EQ(token_f1("delta basin", "delta basin"), 1.0);
  EXPECT_NEAR(token_f1("nigeria delta basin", "delta basin"), 0.8, 1e-12);
  EXPECT_DOUBLE_EQ(token_f1("horn of africa", "delta basin"), 0.0);
  EXPECT_DOUBLE_EQ(token_f1("the", "a"), 0.0);
  EXPECT_DOUBLE_EQ(token_f1("", ""), 0.0);
  // Multiset: "a a b" vs "a b b" shares one "a" and one "b".
  EXPECT_NEAR(token_f1("x x y", "x y y"), 2.0 / 3.0, 1e-12);
}

TEST(JudgeTokenOverlap, Thresholds) {
  EXPECT_TRUE(judge_token_overlap("delta basin", Refs{"delta basin"}, 1.0));
  EXPECT_TRUE(judge_token_overlap("nigeria delta basin", Refs{"delta basin"}, 0.8));
  EXPECT_FALSE(judge_token_overlap("nigeria delta basin", Refs{"delta basin"}, 0.81));
  EXPECT_FALSE(judge_token_overlap("horn of africa", Refs{"delta basin"}, 0.01));
  EXPECT_THROW(judge_token_overlap("a", Refs{"a"}, 0.0), PreconditionError);
  EXPECT_THROW(judge_token_overlap("a", Refs{"a"}, 1.1), PreconditionError);
}

TEST(JudgeEmbedding, ConstructedVectors) {
  const float s = static_cast<float>(std::sqrt(1.0 - 0.81));
  TableEmbedder e({{"ref", {1, 0}}, {"close", {0.9f, s}}, {"orth", {0, 1}}, {"zero", {0, 0}}}, {1, 1});
  EXPECT_TRUE(judge_embedding(e, "ref", Refs{"ref"}, 1.0));
  EXPECT_FALSE(judge_embedding(e, "orth", Refs{"ref"}, 0.85));
  EXPECT_TRUE(judge_embedding(e, "close", Refs{"ref"}, 0.85));
  EXPECT_FALSE(judge_embedding(e, "close", Refs{"ref"}, 0.95));
  EXPECT_TRUE(judge_embedding(e, "close", Refs{"orth", "ref"}, 0.85));
  EXPECT_THROW(judge_embedding(e, "zero", Refs{"ref"}, 0.85), DomainError);
  EXPECT_THROW(judge_embedding(e, "ref", Refs{"ref"}, -1.0), PreconditionError);
}

TEST(Judge, DispatchAndValidation) {
  MockJudge llm;
  HashEmbedder emb(64);
  JudgeOptions opts;
  EXPECT_THROW(Judge(opts, nullptr, nullptr), ConfigError);
  opts.comparator = Comparator::EmbeddingSim;
  EXPECT_THROW(Judge(opts, &llm, nullptr), ConfigError);
  opts.comparator = Comparator::TokenOverlap;
  opts.token_overlap_threshold = 0;
  EXPECT_THROW(Judge(opts, nullptr, nullptr), ConfigError);

  opts.token_overlap_threshold = 0.5;
  const Judge overlap(opts, nullptr, nullptr);
  const auto v = overlap.decide("q1", "q", Refs{"delta basin"}, "nigeria delta basin");
  EXPECT_TRUE(v.decision);
  EXPECT_EQ(v.question_id, "q1");
  ASSERT_TRUE(v.score);
  EXPECT_NEAR(*v.score, 0.8, 1e-12);
  EXPECT_EQ(v.references, Refs{"delta basin"});

  const auto j = to_json(v);
  for (const char* key : {"question_id", "comparator", "decision", "references", "prediction", "raw_output"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["comparator"], "token_overlap");
}

TEST(Judge, ComparatorNames) {
  for (auto c : {Comparator::LlmJudge, Comparator::ExactMatch, Comparator::TokenOverlap,
                 Comparator::EmbeddingSim}) {
    EXPECT_EQ(parse_comparator(to_string(c)), c);
  }
  EXPECT_THROW(parse_comparator("bleu"), ConfigError);
}

class AllComparators : public ::testing::TestWithParam<Comparator> {
 protected:
  MockJudge llm_;
  HashEmbedder emb_{512};
  Judge judge() {
    JudgeOptions o;
    o.comparator = GetParam();
    return Judge(o, &llm_, &emb_);
  }
};

TEST_P(AllComparators, Reflexive) {
  const auto j = judge();
  EXPECT_TRUE(j.decide("q", "?", Refs{"Tulsa, Oklahoma"}, "Tulsa, Oklahoma").decision);
  EXPECT_TRUE(j.decide("q", "?", Refs{"x y", "delta basin"}, "delta basin").decision);
}

TEST_P(AllComparators, AddingReferencesNeverFlipsYesToNo) {
  const auto j = judge();
  const Refs pool{"tulsa oklahoma", "tulsa", "delta basin", "horn of africa", "niger delta",
                  "oklahoma city", "greenwood district", "africa"};
  std::mt19937_64 rng(static_cast<unsigned>(GetParam()) + 1);
  for (int trial = 0; trial < 60; ++trial) {
    const auto& prediction = pool[rng() % pool.size()];
    Refs refs{pool[rng() % pool.size()]};
    bool before = j.decide("q", "?", refs, prediction).decision;
    for (int add = 0; add < 3; ++add) {
      refs.push_back(pool[rng() % pool.size()]);
      const bool after = j.decide("q", "?", refs, prediction).decision;
      EXPECT_TRUE(!before || after);
      before = after;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Judge, AllComparators,
                         ::testing::Values(Comparator::LlmJudge, Comparator::ExactMatch,
                                           Comparator::TokenOverlap, Comparator::EmbeddingSim),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(JudgeExact, ImpliesFullTokenOverlap) {
  std::mt19937_64 rng(4);
  const Refs words{"The", "delta", "Basin", "a", "Tulsa,", "oklahoma.", "an", "Horn"};
  for (int trial = 0; trial < 2000; ++trial) {
    std::string p, r;
    for (int i = 0; i < 1 + static_cast<int>(rng() % 4); ++i) p += words[rng() % words.size()] + " ";
    for (int i = 0; i < 1 + static_cast<int>(rng() % 4); ++i) r += words[rng() % words.size()] + " ";
    if (judge_exact(p, Refs{r}) && !normalize_answer(p).empty()) {
      EXPECT_TRUE(judge_token_overlap(p, Refs{r}, 1.0)) << p << " | " << r;
    }
  }
}

}  // namespace
}  // namespace reteval
