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
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "reteval/corpus.h"
#include "reteval/embedding.h"

namespace reteval {

struct ScoredChunk {
  std::string chunk_id;
  double score = 0.0;   ///< cosine similarity to the query
  std::size_t rank = 0; ///< 1-based

  bool operator==(const ScoredChunk&) const = default;
};

/// Top-k chunks for one question, ordered by score descending with ties
/// broken by chunk id ascending. `ranked.size() == min(k, index size)`.
struct RetrievalResult {
  std::string question_id;
  std::size_t k = 0;
  std::vector<ScoredChunk> ranked;

  /// Chunk ids of the first min(k, ranked.size()) entries.
  std::vector<std::string> top_ids(std::size_t k) const;
  /// Prefix view of this result at a smaller cutoff.
  RetrievalResult truncated(std::size_t k) const;

  bool operator==(const RetrievalResult&) const = default;
};

/// Exact (brute-force) cosine index over passage embeddings. Immutable once
/// built; safe for concurrent search.
///
/// On-disk layout (all integers little-endian):
///   magic "RTVX" | u8 version (=1) | 3 zero bytes | u32 dimension |
///   u32 reserved (0) | u64 count | u16 len + provider id bytes |
///   u16 len + model id bytes | count x dimension f32 vectors |
///   count x (u32 len + chunk id bytes)
class Index {
 public:
  static constexpr std::uint8_t kFormatVersion = 1;

  /// Embeds every chunk as EmbedKind::Passage in batches spread over
  /// `workers` threads. Throws PreconditionError on an empty corpus and
  /// IntegrityError on duplicate chunk ids.
  static Index build(std::span<const Chunk> chunks, EmbeddingProvider& provider,
                     std::size_t workers = 1, std::size_t batch_size = 64);

  static Index load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
  std::string serialize() const;

  std::size_t size() const { return chunk_ids_.size(); }
  std::size_t dimension() const { return dimension_; }
  const std::string& provider_id() const { return provider_id_; }
  const std::string& model_id() const { return model_id_; }
  const std::vector<std::string>& chunk_ids() const { return chunk_ids_; }
  std::span<const float> vector(std::size_t i) const {
    return {vectors_.data() + i * dimension_, dimension_};
  }

  /// Exhaustive top-k scan. Zero-norm passage vectors score 0.
  std::vector<ScoredChunk> search(std::span<const float> query, std::size_t k) const;

 private:
  Index() = default;
  void finish_load();

  std::size_t dimension_ = 0;
  std::string provider_id_;
  std::string model_id_;
  std::vector<float> vectors_;
  std::vector<std::string> chunk_ids_;
  std::vector<double> norms_;
};

/// Embeds the question text (EmbedKind::Query) and searches the index.
/// The provider must match the one the index was built with.
RetrievalResult retrieve(const Index& index, EmbeddingProvider& provider, const Question& question,
                         std::size_t k);

/// retrieve() for many questions; query embeddings are batched and searches
/// run on `workers` threads. Output order follows `questions`.
std::vector<RetrievalResult> retrieve_all(const Index& index, EmbeddingProvider& provider,
                                          std::span<const Question> questions, std::size_t k,
                                          std::size_t workers = 1);

/// TREC run format: `qid Q0 chunk_id rank score tag`, one line per entry.
void write_trec_run(std::ostream& out, std::span<const RetrievalResult> results,
                    const std::string& tag);

}  // namespace reteval
