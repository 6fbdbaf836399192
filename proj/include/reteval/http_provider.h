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

#include <chrono>
#include <mutex>
#include <string>
#include <thread>

#include "reteval/completion.h"
#include "reteval/embedding.h"
#include "reteval/errors.h"

namespace reteval {

/// Bounded exponential backoff: attempt i (0-based) waits
/// min(base_delay * 2^i, max_delay) before attempt i+1.
struct RetryPolicy {
  int max_attempts = 4;
  std::chrono::milliseconds base_delay{500};
  std::chrono::milliseconds max_delay{8000};
};

/// Runs `fn`, retrying on TransportError. Once attempts are exhausted the
/// last transport error is rethrown as ProviderError.
template <typename Fn>
auto with_retries(const RetryPolicy& policy, Fn&& fn) -> decltype(fn()) {
  auto delay = policy.base_delay;
  for (int attempt = 1;; ++attempt) {
    try {
      return fn();
    } catch (const TransportError& e) {
      if (attempt >= policy.max_attempts) {
        throw ProviderError(std::string(e.what()) + " (after " + std::to_string(attempt) +
                            " attempts)");
      }
    }
    std::this_thread::sleep_for(delay);
    delay = std::min(delay * 2, policy.max_delay);
  }
}

/// Spaces calls at least 1/requests_per_second apart across threads.
/// A non-positive rate disables limiting.
class RateLimiter {
 public:
  explicit RateLimiter(double requests_per_second);
  void acquire();

 private:
  std::mutex mu_;
  std::chrono::steady_clock::duration interval_{};
  std::chrono::steady_clock::time_point next_{};
};

struct HttpProviderOptions {
  std::string name;      ///< provider id recorded in indexes and caches
  std::string base_url;  ///< e.g. "https://api.openai.com/v1"
  std::string model;
  std::string api_key_env;  ///< environment variable holding the bearer token
  double timeout_seconds = 60.0;
  double requests_per_second = 0.0;
  RetryPolicy retry;
};

/// OpenAI-compatible `POST {base_url}/chat/completions`, single user message.
class OpenAiCompletionProvider final : public CompletionProvider {
 public:
  explicit OpenAiCompletionProvider(HttpProviderOptions options);

  std::string provider_id() const override { return options_.name; }
  std::string model_id() const override { return options_.model; }
  std::string complete(const CompletionRequest& request) override;

 private:
  HttpProviderOptions options_;
  std::string api_key_;
  RateLimiter limiter_;
};

/// OpenAI-compatible `POST {base_url}/embeddings`.
class OpenAiEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit OpenAiEmbeddingProvider(HttpProviderOptions options);

  std::string provider_id() const override { return options_.name; }
  std::string model_id() const override { return options_.model; }

 protected:
  std::vector<Embedding> do_embed(std::span<const std::string> texts, EmbedKind kind) override;

 private:
  HttpProviderOptions options_;
  std::string api_key_;
  RateLimiter limiter_;
};

}  // namespace reteval
