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

#include "reteval/fixture.h"

#include <gtest/gtest.h>

#include "reteval/corpus.h"
#include "temp_dir.h"

namespace reteval {
namespace {

using testing_support::TempDir;
using testing_support::read_text;

std::size_t chunks_containing(const std::vector<Chunk>& chunks, const std::string& needle) {
  std::size_t n = 0;
  for (const auto& c : chunks) n += c.text.find(needle) != std::string::npos;
  return n;
}

struct Loaded {
  std::vector<Chunk> chunks;
  std::vector<Question> questions;
};

Loaded load(const FixtureFiles& f) {
  return {chunk_corpus(ingest_corpus(f.corpus), {100, 0}), load_dataset(f.dataset)};
}

TEST(Fixture, ShapeAndReferences) {
  TempDir dir;
  for (auto variant : {FixtureVariant::Clean, FixtureVariant::Mixed}) {
    const auto data = load(write_fixture(dir / "f", variant));
    ASSERT_EQ(data.questions.size(), 50u);
    ASSERT_EQ(data.chunks.size(), 500u);
    for (const auto& c : data.chunks) EXPECT_EQ(c.token_count, 100u);
    const ChunkStore store(data.chunks);
    EXPECT_NO_THROW(validate_gold_references(data.questions, store));
    for (const auto& q : data.questions) {
      ASSERT_EQ(q.gold_answers.size(), 1u);
      EXPECT_NE(store.at(q.gold_chunk_ids[0]).text.find(q.gold_answers[0]), std::string::npos);
    }
  }
}

TEST(Fixture, CleanVariantHasAnswersOnlyInGoldChunks) {
  TempDir dir;
  const auto data = load(write_fixture(dir / "f", FixtureVariant::Clean));
  for (const auto& q : data.questions) EXPECT_EQ(chunks_containing(data.chunks, q.gold_answers[0]), 1u);
}

TEST(Fixture, MixedVariantPlacesUnlabeledAnswers) {
  TempDir dir;
  const auto data = load(write_fixture(dir / "f", FixtureVariant::Mixed));
  for (std::size_t i = 0; i < data.questions.size(); ++i) {
    const auto& q = data.questions[i];
    const bool unlabeled = i >= fixture::kUnlabeledAnswerBegin && i < fixture::kUnlabeledAnswerEnd;
    EXPECT_EQ(chunks_containing(data.chunks, q.gold_answers[0]), unlabeled ? 2u : 1u) << q.question_id;
  }
}

TEST(Fixture, DeterministicAndMatchesBundledCopy) {
  TempDir dir;
  for (const char* name : {"clean", "mixed"}) {
    const auto variant = std::string(name) == "clean" ? FixtureVariant::Clean : FixtureVariant::Mixed;
    const auto a = write_fixture(dir / "a" / name, variant);
    const auto b = write_fixture(dir / "b" / name, variant);
    const auto bundled = testing_support::source_dir() / "data/fixtures" / name;
    for (const char* file : {"corpus.jsonl", "dataset.jsonl", "config.json"}) {
      EXPECT_EQ(read_text(a.corpus.parent_path() / file), read_text(b.corpus.parent_path() / file));
      EXPECT_EQ(read_text(a.corpus.parent_path() / file), read_text(bundled / file)) << name << "/" << file;
    }
  }
}

}  // namespace
}  // namespace reteval
