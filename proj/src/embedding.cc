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

#include "reteval/embedding.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "binary.h"
#include "reteval/cache.h"
#include "reteval/errors.h"
#include "reteval/hash.h"

namespace reteval {

std::string_view to_string(EmbedKind kind) {
  return kind == EmbedKind::Query ? "query" : "passage";
}

double cosine(std::span<const float> u, std::span<const float> v) {
  if (u.size() != v.size()) {
    throw PreconditionError("cosine: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                            std::to_string(v.size()) + ")");
  }
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = u[i], b = v[i];
    dot += a * b;
    uu += a * a;
    vv += b * b;
  }
  if (uu == 0.0 || vv == 0.0) throw DomainError("cosine: zero vector");
  return std::clamp(dot / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
}

std::vector<Embedding> EmbeddingProvider::embed(std::span<const std::string> texts,
                                                EmbedKind kind) {
  if (texts.empty()) throw PreconditionError("embed: empty input");
  auto out = do_embed(texts, kind);
  if (out.size() != texts.size()) {
    throw IntegrityError("embed: provider returned " + std::to_string(out.size()) +
                         " vectors for " + std::to_string(texts.size()) + " texts");
  }
  const std::size_t dim = out.front().dimension();
  for (const auto& e : out) {
    if (e.dimension() != dim || dim == 0) throw IntegrityError("embed: inconsistent dimension");
    if (!std::all_of(e.values.begin(), e.values.end(), [](float x) { return std::isfinite(x); })) {
      throw IntegrityError("embed: non-finite value");
    }
  }
  return out;
}

// --- HashEmbedder ------------------------------------------------------------

HashEmbedder::HashEmbedder(std::size_t dimension, std::string model_id)
    : dimension_(dimension), model_(std::move(model_id)) {
  if (dimension_ == 0) throw PreconditionError("HashEmbedder: dimension must be positive");
}

std::vector<std::string> HashEmbedder::tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c >= 0x80) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

namespace {

// FNV-1a alone spreads poorly into the low bits used for bucketing.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::vector<Embedding> HashEmbedder::do_embed(std::span<const std::string> texts, EmbedKind) {
  ++calls_;
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    Embedding e;
    e.values.assign(dimension_, 0.0f);
    for (const auto& tok : tokens(text)) {
      const auto h = mix64(fnv1a64(tok));
      const float sign = (h >> 63) != 0 ? -1.0f : 1.0f;
      e.values[(h & 0x7FFFFFFFFFFFFFFFULL) % dimension_] += sign;
    }
    out.push_back(std::move(e));
  }
  return out;
}

// --- PrefixingEmbedder -------------------------------------------------------

PrefixingEmbedder::PrefixingEmbedder(std::shared_ptr<EmbeddingProvider> inner,
                                     std::string query_prefix, std::string passage_prefix)
    : inner_(std::move(inner)),
      query_prefix_(std::move(query_prefix)),
      passage_prefix_(std::move(passage_prefix)) {}

std::vector<Embedding> PrefixingEmbedder::do_embed(std::span<const std::string> texts,
                                                   EmbedKind kind) {
  const auto& prefix = kind == EmbedKind::Query ? query_prefix_ : passage_prefix_;
  if (prefix.empty()) return inner_->embed(texts, kind);
  std::vector<std::string> prefixed;
  prefixed.reserve(texts.size());
  for (const auto& t : texts) prefixed.push_back(prefix + t);
  return inner_->embed(prefixed, kind);
}

// --- CachingEmbedder ---------------------------------------------------------

namespace {

constexpr std::string_view kEmbeddingNamespace = "embeddings";

std::string encode(const Embedding& e) {
  std::string out;
  out.reserve(4 + 4 * e.values.size());
  binary::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(e.values.size()));
  for (float x : e.values) binary::put_f32(out, x);
  return out;
}

std::optional<Embedding> decode(std::string_view bytes) {
  try {
    binary::Reader r(bytes);
    const auto dim = r.le<std::uint32_t>();
    if (r.remaining() != 4ULL * dim) return std::nullopt;
    Embedding e;
    e.values.reserve(dim);
    for (std::uint32_t i = 0; i < dim; ++i) e.values.push_back(r.f32());
    return e;
  } catch (const IntegrityError&) {
    return std::nullopt;
  }
}

}  // namespace

std::string embedding_cache_key(std::string_view provider_id, std::string_view model_id,
                                EmbedKind kind, std::string_view text) {
  std::string buf = "reteval.embedding/1";
  for (std::string_view field : {provider_id, model_id, to_string(kind)}) {
    binary::put_le<std::uint64_t>(buf, field.size());
    buf.append(field);
  }
  buf.append(sha256_hex(text));
  return sha256_hex(buf);
}

CachingEmbedder::CachingEmbedder(std::shared_ptr<EmbeddingProvider> inner,
                                 std::shared_ptr<const DiskCache> cache)
    : inner_(std::move(inner)), cache_(std::move(cache)) {}

std::vector<Embedding> CachingEmbedder::do_embed(std::span<const std::string> texts,
                                                 EmbedKind kind) {
  const auto provider = inner_->provider_id();
  const auto model = inner_->model_id();
  std::vector<Embedding> out(texts.size());
  std::vector<std::string> keys(texts.size());
  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    keys[i] = embedding_cache_key(provider, model, kind, texts[i]);
    auto hit = cache_->get(kEmbeddingNamespace, keys[i]);
    std::optional<Embedding> decoded = hit ? decode(*hit) : std::nullopt;
    if (decoded) {
      out[i] = std::move(*decoded);
    } else {
      missing.push_back(i);
    }
  }
  hits_ += texts.size() - missing.size();
  misses_ += missing.size();
  if (!missing.empty()) {
    std::vector<std::string> batch;
    batch.reserve(missing.size());
    for (auto i : missing) batch.push_back(texts[i]);
    auto fresh = inner_->embed(batch, kind);
    for (std::size_t j = 0; j < missing.size(); ++j) {
      cache_->put(kEmbeddingNamespace, keys[missing[j]], encode(fresh[j]));
      out[missing[j]] = std::move(fresh[j]);
    }
  }
  return out;
}

}  // namespace reteval
