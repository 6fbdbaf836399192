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

#include "reteval/corpus.h"

#include <unordered_set>

#include "reteval/errors.h"
#include "reteval/io.h"
#include "reteval/parallel.h"
#include "reteval/text.h"

namespace reteval {

Corpus ingest_corpus(const std::filesystem::path& path) {
  Corpus corpus;
  std::unordered_set<std::string> seen;
  for_each_jsonl(path, [&](std::size_t line, const json& rec) {
    Document doc;
    doc.doc_id = require_string(rec, "id", line);
    doc.title = normalize_text(require_string(rec, "title", line));
    doc.body = normalize_text(require_string(rec, "text", line));
    if (doc.doc_id.empty()) throw ParseError("empty document id", line);
    if (!seen.insert(doc.doc_id).second) {
      throw IntegrityError("duplicate document id \"" + doc.doc_id + "\" at line " +
                           std::to_string(line));
    }
    if (doc.body.empty()) {
      ++corpus.dropped_empty;
      return;
    }
    corpus.documents.push_back(std::move(doc));
  });
  return corpus;
}

std::vector<Chunk> chunk_document(const Document& doc, const ChunkingOptions& options) {
  if (options.max_tokens == 0) throw PreconditionError("max_tokens must be positive");
  if (options.overlap >= options.max_tokens) {
    throw PreconditionError("overlap must be smaller than max_tokens");
  }
  const auto tokens = whitespace_tokenize(doc.body);
  std::vector<Chunk> chunks;
  std::size_t start = 0;
  while (start < tokens.size()) {
    const std::size_t end = std::min(start + options.max_tokens, tokens.size());
    Chunk c;
    c.chunk_id = doc.doc_id + "#" + std::to_string(chunks.size());
    c.doc_id = doc.doc_id;
    c.title = doc.title;
    for (std::size_t i = start; i < end; ++i) {
      if (i > start) c.text.push_back(' ');
      c.text += tokens[i];
    }
    c.token_count = end - start;
    chunks.push_back(std::move(c));
    if (end == tokens.size()) break;
    start = end - options.overlap;
  }
  return chunks;
}

std::vector<Chunk> chunk_corpus(const Corpus& corpus, const ChunkingOptions& options,
                                std::size_t workers) {
  std::vector<std::vector<Chunk>> per_doc(corpus.documents.size());
  parallel_for(corpus.documents.size(), workers, [&](std::size_t i) {
    per_doc[i] = chunk_document(corpus.documents[i], options);
  });
  std::vector<Chunk> out;
  for (auto& chunks : per_doc) {
    for (auto& c : chunks) out.push_back(std::move(c));
  }
  return out;
}

std::vector<Question> load_dataset(const std::filesystem::path& path) {
  std::vector<Question> questions;
  std::unordered_set<std::string> seen;
  for_each_jsonl(path, [&](std::size_t line, const json& rec) {
    Question q;
    q.question_id = require_string(rec, "id", line);
    q.text = normalize_text(require_string(rec, "question", line));
    for (auto& a : require_string_list(rec, "answers", line)) {
      auto norm = normalize_text(a);
      if (!norm.empty()) q.gold_answers.push_back(std::move(norm));
    }
    q.gold_chunk_ids = require_string_list(rec, "gold_chunk_ids", line);
    if (q.question_id.empty()) throw ParseError("empty question id", line);
    if (q.gold_chunk_ids.empty()) {
      throw IntegrityError("question \"" + q.question_id + "\" has no gold_chunk_ids");
    }
    if (!seen.insert(q.question_id).second) {
      throw IntegrityError("duplicate question id \"" + q.question_id + "\"");
    }
    questions.push_back(std::move(q));
  });
  return questions;
}

ChunkStore::ChunkStore(std::vector<Chunk> chunks) : chunks_(std::move(chunks)) {
  by_id_.reserve(chunks_.size());
  for (std::size_t i = 0; i < chunks_.size(); ++i) {
    if (!by_id_.emplace(chunks_[i].chunk_id, i).second) {
      throw IntegrityError("duplicate chunk id \"" + chunks_[i].chunk_id + "\"");
    }
  }
}

bool ChunkStore::contains(std::string_view id) const {
  return by_id_.find(std::string(id)) != by_id_.end();
}

const Chunk& ChunkStore::at(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) throw IntegrityError("unknown chunk id \"" + std::string(id) + "\"");
  return chunks_[it->second];
}

void validate_gold_references(const std::vector<Question>& questions, const ChunkStore& store) {
  for (const auto& q : questions) {
    if (q.gold_chunk_ids.empty()) {
      throw IntegrityError("question \"" + q.question_id + "\" has no gold_chunk_ids");
    }
    for (const auto& id : q.gold_chunk_ids) {
      if (!store.contains(id)) {
        throw IntegrityError("question \"" + q.question_id + "\" references missing gold chunk \"" +
                             id + "\"");
      }
    }
  }
}

void write_chunks(const std::filesystem::path& path, const std::vector<Chunk>& chunks) {
  AtomicFileWriter out(path);
  for (const auto& c : chunks) {
    out.write_json_line({{"chunk_id", c.chunk_id},
                         {"doc_id", c.doc_id},
                         {"title", c.title},
                         {"text", c.text},
                         {"token_count", c.token_count}});
  }
  out.commit();
}

std::vector<Chunk> read_chunks(const std::filesystem::path& path) {
  std::vector<Chunk> chunks;
  for_each_jsonl(path, [&](std::size_t line, const json& rec) {
    Chunk c;
    c.chunk_id = require_string(rec, "chunk_id", line);
    c.doc_id = require_string(rec, "doc_id", line);
    c.title = require_string(rec, "title", line);
    c.text = require_string(rec, "text", line);
    auto tc = rec.find("token_count");
    if (tc == rec.end() || !tc->is_number_unsigned()) {
      throw ParseError("missing token_count", line);
    }
    c.token_count = tc->get<std::size_t>();
    chunks.push_back(std::move(c));
  });
  return chunks;
}

}  // namespace reteval
