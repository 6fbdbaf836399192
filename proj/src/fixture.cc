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

#include <random>
#include <string>
#include <vector>

#include "reteval/io.h"

namespace reteval {
namespace {

constexpr std::string_view kConsonants = "bdfgklmnprstvz";
constexpr std::string_view kVowels = "aeiou";

// Filler words are consonant-vowel syllables and never contain 'q' or 'x',
// so they cannot collide with topic words or answers.
std::vector<std::string> filler_vocabulary() {
  std::vector<std::string> words;
  for (std::size_t i = 0; words.size() < 400; ++i) {
    std::string w;
    std::size_t n = i * 7919 + 13;
    const std::size_t syllables = 2 + i % 2;
    for (std::size_t s = 0; s < syllables; ++s) {
      w += kConsonants[n % kConsonants.size()];
      n /= kConsonants.size();
      w += kVowels[n % kVowels.size()];
      n /= kVowels.size();
    }
    words.push_back(std::move(w));
  }
  return words;
}

std::string letters(std::size_t n, std::size_t width) {
  std::string s;
  for (std::size_t i = 0; i < width; ++i) {
    s += kConsonants[n % kConsonants.size()];
    n /= kConsonants.size();
  }
  return s;
}

std::string topic_word(std::size_t question, std::size_t slot) {
  return "x" + letters(question * 3 + slot, 4);
}

std::string answer_word(std::size_t question) { return "q" + letters(question, 5); }

std::string two_digits(std::size_t n) {
  return std::string(1, static_cast<char>('0' + n / 10)) + static_cast<char>('0' + n % 10);
}

class SegmentBuilder {
 public:
  explicit SegmentBuilder(std::uint64_t seed) : rng_(seed), vocab_(filler_vocabulary()) {}

  std::string build(std::vector<std::string> special) {
    while (special.size() < fixture::kSegmentTokens) {
      special.push_back(vocab_[next(vocab_.size())]);
    }
    for (std::size_t i = special.size() - 1; i > 0; --i) {
      std::swap(special[i], special[next(i + 1)]);
    }
    std::string out;
    for (const auto& w : special) {
      if (!out.empty()) out += ' ';
      out += w;
    }
    return out;
  }

 private:
  std::size_t next(std::size_t bound) { return static_cast<std::size_t>(rng_() % bound); }

  std::mt19937_64 rng_;
  std::vector<std::string> vocab_;
};

bool in(std::size_t q, std::size_t begin, std::size_t end) { return q >= begin && q < end; }

}  // namespace

FixtureFiles write_fixture(const std::filesystem::path& dir, FixtureVariant variant,
                           std::uint64_t seed) {
  using namespace fixture;
  std::filesystem::create_directories(dir);
  SegmentBuilder builder(seed);
  const bool mixed = variant == FixtureVariant::Mixed;

  std::vector<std::vector<std::string>> segments(kQuestions,
                                                 std::vector<std::string>(kSegments));
  for (std::size_t q = 0; q < kQuestions; ++q) {
    const std::vector<std::string> topics = {topic_word(q, 0), topic_word(q, 1), topic_word(q, 2)};
    const std::string answer = answer_word(q);
    std::vector<std::vector<std::string>> special(kSegments);

    auto repeated = [&](std::size_t times) {
      std::vector<std::string> words;
      for (std::size_t t = 0; t < times; ++t) words.insert(words.end(), topics.begin(), topics.end());
      return words;
    };

    if (!mixed || q >= kHardMissEnd) {
      special[0] = repeated(2);
    } else if (in(q, kUnlabeledAnswerBegin, kUnlabeledAnswerEnd)) {
      special[0] = repeated(1);
      special[1] = repeated(3);
      special[1].push_back(answer);
    } else if (in(q, kSoftMissBegin, kSoftMissEnd)) {
      special[0] = repeated(1);
      special[1] = repeated(2);
    } else {
      for (std::size_t s = 1; s < kSegments; ++s) special[s] = repeated(1);
    }
    special[0].push_back(answer);
    for (std::size_t s = 0; s < kSegments; ++s) segments[q][s] = builder.build(special[s]);
  }

  // One more distractor for each hard miss, hosted by a plain question's
  // document, so the gold chunk stays out of the top ten.
  if (mixed) {
    for (std::size_t q = kHardMissBegin; q < kHardMissEnd; ++q) {
      const std::size_t host = kQuestions - 1 - (q - kHardMissBegin);
      segments[host][5] = builder.build({topic_word(q, 0), topic_word(q, 1), topic_word(q, 2)});
    }
  }

  FixtureFiles files{dir / "corpus.jsonl", dir / "dataset.jsonl", dir / "config.json"};
  AtomicFileWriter corpus(files.corpus);
  AtomicFileWriter dataset(files.dataset);
  for (std::size_t q = 0; q < kQuestions; ++q) {
    const std::string doc_id = "doc-" + two_digits(q);
    std::string body;
    for (const auto& s : segments[q]) {
      if (!body.empty()) body += ' ';
      body += s;
    }
    corpus.write_json_line({{"id", doc_id}, {"title", "Document " + two_digits(q)}, {"text", body}});
    dataset.write_json_line(
        {{"id", "q0" + two_digits(q)},
         {"question", "where is the " + topic_word(q, 0) + " " + topic_word(q, 1) + " " +
                          topic_word(q, 2) + " located"},
         {"answers", json::array({answer_word(q)})},
         {"gold_chunk_ids", json::array({doc_id + "#0"})}});
  }
  corpus.commit();
  dataset.commit();

  const json config = {{"dataset", "dataset.jsonl"},
                       {"corpus", "corpus.jsonl"},
                       {"k", {1, 5, 10}},
                       {"chunking", {{"max_tokens", kSegmentTokens}, {"overlap", 0}}},
                       {"embedder", {{"dimension", 8192}}},
                       {"mock", true}};
  write_file_atomic(files.config, config.dump(2) + "\n");
  return files;
}

}  // namespace reteval
