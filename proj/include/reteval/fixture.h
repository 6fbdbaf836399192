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

#include <cstddef>
#include <cstdint>
#include <filesystem>

namespace reteval {

enum class FixtureVariant { Clean, Mixed };

/// Question layout of the synthetic fixture. Every question has one document
/// of ten 100-token segments; segment 0 is the labeled gold chunk.
namespace fixture {
inline constexpr std::size_t kQuestions = 50;
inline constexpr std::size_t kSegments = 10;
inline constexpr std::size_t kSegmentTokens = 100;
/// Mixed variant only. The answer is also placed in an unlabeled chunk that
/// outranks the gold chunk at k=1.
inline constexpr std::size_t kUnlabeledAnswerBegin = 0, kUnlabeledAnswerEnd = 10;
/// Gold chunk ranks second behind an answerless distractor.
inline constexpr std::size_t kSoftMissBegin = 10, kSoftMissEnd = 18;
/// Gold chunk shares no query terms; missed at every k up to 10.
inline constexpr std::size_t kHardMissBegin = 18, kHardMissEnd = 24;
}  // namespace fixture

struct FixtureFiles {
  std::filesystem::path corpus;
  std::filesystem::path dataset;
  std::filesystem::path config;
};

/// Writes corpus.jsonl, dataset.jsonl and config.json into `dir`.
FixtureFiles write_fixture(const std::filesystem::path& dir, FixtureVariant variant,
                           std::uint64_t seed = 7);

}  // namespace reteval
