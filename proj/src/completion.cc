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

#include "reteval/completion.h"

#include "reteval/cache.h"

namespace reteval {

CachingCompletionProvider::CachingCompletionProvider(std::shared_ptr<CompletionProvider> inner,
                                                     std::shared_ptr<const DiskCache> cache)
    : inner_(std::move(inner)), cache_(std::move(cache)) {}

std::string CachingCompletionProvider::complete(const CompletionRequest& request) {
  const auto key =
      cache_key(inner_->model_id(), request.prompt, request.temperature, request.sample_index);
  if (auto hit = cache_->get("completions", key)) {
    ++hits_;
    return *hit;
  }
  ++misses_;
  auto text = inner_->complete(request);
  cache_->put("completions", key, text);
  return text;
}

}  // namespace reteval
