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

#include "reteval/index.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "binary.h"
#include "reteval/errors.h"
#include "reteval/io.h"
#include "reteval/parallel.h"

namespace reteval {

namespace {

constexpr char kMagic[4] = {'R', 'T', 'V', 'X'};

double norm_of(std::span<const float> v) {
  double s = 0.0;
  for (float x : v) s += static_cast<double>(x) * x;
  return std::sqrt(s);
}

}  // namespace

std::vector<std::string> RetrievalResult::top_ids(std::size_t cutoff) const {
  std::vector<std::string> ids;
  const auto n = std::min(cutoff, ranked.size());
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(ranked[i].chunk_id);
  return ids;
}

RetrievalResult RetrievalResult::truncated(std::size_t cutoff) const {
  RetrievalResult r{question_id, cutoff, {}};
  const auto n = std::min(cutoff, ranked.size());
  r.ranked.assign(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(n));
  return r;
}

Index Index::build(std::span<const Chunk> chunks, EmbeddingProvider& provider,
                   std::size_t workers, std::size_t batch_size) {
  if (chunks.empty()) throw PreconditionError("build_index: empty corpus");
  if (batch_size == 0) batch_size = 1;
  std::unordered_set<std::string_view> seen;
  for (const auto& c : chunks) {
    if (!seen.insert(c.chunk_id).second) {
      throw IntegrityError("build_index: duplicate chunk id \"" + c.chunk_id + "\"");
    }
  }

  const std::size_t batches = (chunks.size() + batch_size - 1) / batch_size;
  std::vector<std::vector<Embedding>> embedded(batches);
  parallel_for(batches, workers, [&](std::size_t b) {
    const std::size_t begin = b * batch_size;
    const std::size_t end = std::min(begin + batch_size, chunks.size());
    std::vector<std::string> texts;
    texts.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) texts.push_back(chunks[i].text);
    embedded[b] = provider.embed(texts, EmbedKind::Passage);
  });

  Index index;
  index.provider_id_ = provider.provider_id();
  index.model_id_ = provider.model_id();
  index.dimension_ = embedded.front().front().dimension();
  index.vectors_.reserve(chunks.size() * index.dimension_);
  for (const auto& batch : embedded) {
    for (const auto& e : batch) {
      if (e.dimension() != index.dimension_) {
        throw IntegrityError("build_index: inconsistent embedding dimension");
      }
      index.vectors_.insert(index.vectors_.end(), e.values.begin(), e.values.end());
    }
  }
  index.chunk_ids_.reserve(chunks.size());
  for (const auto& c : chunks) index.chunk_ids_.push_back(c.chunk_id);
  index.finish_load();
  return index;
}

void Index::finish_load() {
  norms_.resize(chunk_ids_.size());
  for (std::size_t i = 0; i < chunk_ids_.size(); ++i) norms_[i] = norm_of(vector(i));
}

std::string Index::serialize() const {
  std::string out;
  out.reserve(64 + vectors_.size() * 4 + chunk_ids_.size() * 16);
  out.append(kMagic, sizeof(kMagic));
  out.push_back(static_cast<char>(kFormatVersion));
  out.append(3, '\0');
  binary::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(dimension_));
  binary::put_le<std::uint32_t>(out, 0);
  binary::put_le<std::uint64_t>(out, chunk_ids_.size());
  for (const auto* s : {&provider_id_, &model_id_}) {
    if (s->size() > 0xFFFF) throw PreconditionError("index: identifier too long");
    binary::put_le<std::uint16_t>(out, static_cast<std::uint16_t>(s->size()));
    out.append(*s);
  }
  for (float x : vectors_) binary::put_f32(out, x);
  for (const auto& id : chunk_ids_) {
    binary::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(id.size()));
    out.append(id);
  }
  return out;
}

void Index::save(const std::filesystem::path& path) const { write_file_atomic(path, serialize()); }

Index Index::load(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  binary::Reader r(bytes);
  if (r.bytes(4) != std::string_view(kMagic, 4)) {
    throw IntegrityError(path.string() + ": not an index file");
  }
  const auto version = r.le<std::uint8_t>();
  if (version != kFormatVersion) {
    throw IntegrityError(path.string() + ": unsupported index version " + std::to_string(version));
  }
  r.bytes(3);
  Index index;
  index.dimension_ = r.le<std::uint32_t>();
  r.le<std::uint32_t>();
  const auto count = r.le<std::uint64_t>();
  index.provider_id_ = std::string(r.bytes(r.le<std::uint16_t>()));
  index.model_id_ = std::string(r.bytes(r.le<std::uint16_t>()));
  if (index.dimension_ == 0) throw IntegrityError(path.string() + ": zero dimension");
  if (r.remaining() / 4 / index.dimension_ < count) throw IntegrityError("truncated index file");
  index.vectors_.resize(count * index.dimension_);
  for (auto& x : index.vectors_) x = r.f32();
  index.chunk_ids_.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    index.chunk_ids_.emplace_back(r.bytes(r.le<std::uint32_t>()));
  }
  if (r.remaining() != 0) throw IntegrityError(path.string() + ": trailing bytes");
  index.finish_load();
  return index;
}

std::vector<ScoredChunk> Index::search(std::span<const float> query, std::size_t k) const {
  if (k == 0) throw PreconditionError("retrieve: k must be >= 1");
  if (query.size() != dimension_) {
    throw IntegrityError("retrieve: query dimension " + std::to_string(query.size()) +
                         " does not match index dimension " + std::to_string(dimension_));
  }
  const double qnorm = norm_of(query);
  if (qnorm == 0.0) throw DomainError("retrieve: zero query vector");

  std::vector<double> scores(size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (norms_[i] == 0.0) continue;
    const auto v = vector(i);
    double dot = 0.0;
    for (std::size_t d = 0; d < dimension_; ++d) dot += static_cast<double>(query[d]) * v[d];
    scores[i] = std::clamp(dot / (qnorm * norms_[i]), -1.0, 1.0);
  }

  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t n = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      return chunk_ids_[a] < chunk_ids_[b];
                    });
  std::vector<ScoredChunk> out;
  out.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    out.push_back({chunk_ids_[order[r]], scores[order[r]], r + 1});
  }
  return out;
}

namespace {

void check_provider(const Index& index, const EmbeddingProvider& provider) {
  if (provider.provider_id() != index.provider_id() || provider.model_id() != index.model_id()) {
    throw IntegrityError("retrieve: index was built with " + index.provider_id() + "/" +
                         index.model_id() + " but queries use " + provider.provider_id() + "/" +
                         provider.model_id());
  }
}

}  // namespace

RetrievalResult retrieve(const Index& index, EmbeddingProvider& provider, const Question& question,
                         std::size_t k) {
  check_provider(index, provider);
  const std::vector<std::string> text{question.text};
  const auto q = provider.embed(text, EmbedKind::Query);
  return {question.question_id, k, index.search(q.front().values, k)};
}

std::vector<RetrievalResult> retrieve_all(const Index& index, EmbeddingProvider& provider,
                                          std::span<const Question> questions, std::size_t k,
                                          std::size_t workers) {
  if (questions.empty()) return {};
  check_provider(index, provider);
  constexpr std::size_t kBatch = 64;
  const std::size_t batches = (questions.size() + kBatch - 1) / kBatch;
  std::vector<RetrievalResult> out(questions.size());
  parallel_for(batches, workers, [&](std::size_t b) {
    const std::size_t begin = b * kBatch;
    const std::size_t end = std::min(begin + kBatch, questions.size());
    std::vector<std::string> texts;
    for (std::size_t i = begin; i < end; ++i) texts.push_back(questions[i].text);
    const auto vecs = provider.embed(texts, EmbedKind::Query);
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = {questions[i].question_id, k, index.search(vecs[i - begin].values, k)};
    }
  });
  return out;
}

void write_trec_run(std::ostream& out, std::span<const RetrievalResult> results,
                    const std::string& tag) {
  for (const auto& r : results) {
    for (const auto& s : r.ranked) {
      out << r.question_id << " Q0 " << s.chunk_id << ' ' << s.rank << ' ' << json(s.score).dump()
          << ' ' << tag << '\n';
    }
  }
}

}  // namespace reteval
