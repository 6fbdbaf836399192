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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace reteval {

/// Content-addressed key for one completion request. SHA-256 over a
/// length-prefixed encoding of the fields; temperature is encoded with its
/// shortest round-trip decimal form, so keys are identical on every platform.
std::string cache_key(std::string_view model_id, std::string_view prompt, double temperature,
                      int sample_index);

/// File-per-entry key/value store under `root/<namespace>/<k0k1>/<key>`.
/// Writes are atomic (temp file + rename), so concurrent writers of the same
/// key are harmless as long as they write the same value.
class DiskCache {
 public:
  explicit DiskCache(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  std::optional<std::string> get(std::string_view ns, std::string_view key) const;
  void put(std::string_view ns, std::string_view key, std::string_view value) const;

 private:
  std::filesystem::path entry_path(std::string_view ns, std::string_view key) const;

  std::filesystem::path root_;
};

}  // namespace reteval
