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

#include <atomic>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace reteval {

class DiskCache;

/// Role of the text being embedded. Providers may treat the two kinds
/// differently (e.g. role prefixes); the core passes it through untouched.
enum class EmbedKind { Query, Passage };

std::string_view to_string(EmbedKind kind);

struct Embedding {
  std::vector<float> values;

  std::size_t dimension() const { return values.size(); }
  bool operator==(const Embedding&) const = default;
};

/// dot(u, v) / (|u| |v|), accumulated in double and clamped to [-1, 1].
/// Throws PreconditionError on dimension mismatch and DomainError if either
/// vector is all zeros.
double cosine(std::span<const float> u, std::span<const float> v);
inline double cosine(const Embedding& u, const Embedding& v) { return cosine(u.values, v.values); }

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  virtual std::string provider_id() const = 0;
  virtual std::string model_id() const = 0;

  /// One vector per input text, in input order. Throws PreconditionError on
  /// an empty input list and IntegrityError if the provider returns the
  /// wrong number of vectors, mixed dimensions or non-finite values.
  std::vector<Embedding> embed(std::span<const std::string> texts, EmbedKind kind);

 protected:
  virtual std::vector<Embedding> do_embed(std::span<const std::string> texts, EmbedKind kind) = 0;
};

/// Deterministic offline embedder: lowercased alphanumeric tokens are
/// feature-hashed (FNV-1a with a finalizer, signed) into a fixed number of buckets. Texts that
/// share tokens get positive cosine; identical texts get identical vectors
/// regardless of kind.
class HashEmbedder final : public EmbeddingProvider {
 public:
  explicit HashEmbedder(std::size_t dimension, std::string model_id = "hash-bow");

  std::string provider_id() const override { return "mock"; }
  std::string model_id() const override { return model_; }
  std::size_t dimension() const { return dimension_; }

  /// Number of do_embed() invocations so far.
  std::size_t calls() const { return calls_.load(); }

  static std::vector<std::string> tokens(std::string_view text);

 protected:
  std::vector<Embedding> do_embed(std::span<const std::string> texts, EmbedKind kind) override;

 private:
  std::size_t dimension_;
  std::string model_;
  std::atomic<std::size_t> calls_{0};
};

/// Prepends a per-kind prefix before delegating (e.g. "query: " and
/// "passage: " for models trained with role prefixes).
class PrefixingEmbedder final : public EmbeddingProvider {
 public:
  PrefixingEmbedder(std::shared_ptr<EmbeddingProvider> inner, std::string query_prefix,
                    std::string passage_prefix);

  std::string provider_id() const override { return inner_->provider_id(); }
  std::string model_id() const override { return inner_->model_id(); }

 protected:
  std::vector<Embedding> do_embed(std::span<const std::string> texts, EmbedKind kind) override;

 private:
  std::shared_ptr<EmbeddingProvider> inner_;
  std::string query_prefix_;
  std::string passage_prefix_;
};

/// Disk-backed memoization keyed by (provider id, model id, kind, text hash).
/// Only cache misses reach the inner provider, batched in one call.
class CachingEmbedder final : public EmbeddingProvider {
 public:
  CachingEmbedder(std::shared_ptr<EmbeddingProvider> inner, std::shared_ptr<const DiskCache> cache);

  std::string provider_id() const override { return inner_->provider_id(); }
  std::string model_id() const override { return inner_->model_id(); }

  std::size_t hits() const { return hits_.load(); }
  /// Texts forwarded to the inner provider.
  std::size_t misses() const { return misses_.load(); }

 protected:
  std::vector<Embedding> do_embed(std::span<const std::string> texts, EmbedKind kind) override;

 private:
  std::shared_ptr<EmbeddingProvider> inner_;
  std::shared_ptr<const DiskCache> cache_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
};

std::string embedding_cache_key(std::string_view provider_id, std::string_view model_id,
                                EmbedKind kind, std::string_view text);

}  // namespace reteval
