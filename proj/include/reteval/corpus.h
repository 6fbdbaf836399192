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
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace reteval {

struct Document {
  std::string doc_id;
  std::string title;
  std::string body;
};

/// A contiguous token window of one document. `chunk_id` is always
/// `doc_id + "#" + ordinal`, so ids are stable for a given corpus and
/// chunking configuration.
struct Chunk {
  std::string chunk_id;
  std::string doc_id;
  std::string title;
  std::string text;
  std::size_t token_count = 0;

  bool operator==(const Chunk&) const = default;
};

struct Question {
  std::string question_id;
  std::string text;
  std::vector<std::string> gold_answers;
  std::vector<std::string> gold_chunk_ids;
};

struct Corpus {
  std::vector<Document> documents;
  /// Records whose text was empty after normalization; not included above.
  std::size_t dropped_empty = 0;
};

struct ChunkingOptions {
  std::size_t max_tokens = 100;
  std::size_t overlap = 0;
};

/// Loads corpus JSONL (`{"id", "title", "text"}` per line), normalizing
/// title and text. Input order is preserved.
Corpus ingest_corpus(const std::filesystem::path& path);

/// Splits the whitespace token stream of `doc.body` into windows of at most
/// `max_tokens`, each starting `max_tokens - overlap` tokens after the
/// previous one. The last window always ends at the final token.
std::vector<Chunk> chunk_document(const Document& doc, const ChunkingOptions& options);

/// chunk_document over every document, parallel across documents. Output
/// order follows document order.
std::vector<Chunk> chunk_corpus(const Corpus& corpus, const ChunkingOptions& options,
                                std::size_t workers = 1);

/// Loads dataset JSONL (`{"id", "question", "answers", "gold_chunk_ids"}`).
std::vector<Question> load_dataset(const std::filesystem::path& path);

/// Immutable id -> chunk lookup preserving insertion order.
class ChunkStore {
 public:
  ChunkStore() = default;
  explicit ChunkStore(std::vector<Chunk> chunks);

  const std::vector<Chunk>& chunks() const { return chunks_; }
  std::size_t size() const { return chunks_.size(); }
  bool contains(std::string_view id) const;
  const Chunk& at(std::string_view id) const;

 private:
  std::vector<Chunk> chunks_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

/// Throws IntegrityError naming the first gold chunk id that does not
/// resolve, or the first question with no gold chunk ids.
void validate_gold_references(const std::vector<Question>& questions, const ChunkStore& store);

void write_chunks(const std::filesystem::path& path, const std::vector<Chunk>& chunks);
std::vector<Chunk> read_chunks(const std::filesystem::path& path);

}  // namespace reteval
