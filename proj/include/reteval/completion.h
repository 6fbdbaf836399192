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
#include <memory>
#include <string>

namespace reteval {

class DiskCache;

struct CompletionRequest {
  std::string prompt;
  double temperature = 0.0;
  int max_tokens = 16;
  /// Distinguishes repeated samples of the same prompt (cache identity).
  int sample_index = 0;
};

/// Text-in, text-out language model endpoint, shared by answer generation
/// and LLM judging. Implementations must be safe to call concurrently.
class CompletionProvider {
 public:
  virtual ~CompletionProvider() = default;
  virtual std::string provider_id() const = 0;
  virtual std::string model_id() const = 0;
  virtual std::string complete(const CompletionRequest& request) = 0;
};

/// Memoizes completions on disk under cache_key(model, prompt, temperature,
/// sample_index). Only misses reach the inner provider.
class CachingCompletionProvider final : public CompletionProvider {
 public:
  CachingCompletionProvider(std::shared_ptr<CompletionProvider> inner,
                            std::shared_ptr<const DiskCache> cache);

  std::string provider_id() const override { return inner_->provider_id(); }
  std::string model_id() const override { return inner_->model_id(); }
  std::string complete(const CompletionRequest& request) override;

  std::size_t hits() const { return hits_.load(); }
  std::size_t misses() const { return misses_.load(); }

 private:
  std::shared_ptr<CompletionProvider> inner_;
  std::shared_ptr<const DiskCache> cache_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
};

}  // namespace reteval
