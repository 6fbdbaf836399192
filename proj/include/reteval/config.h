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
#include <map>
#include <string>
#include <vector>

#include "reteval/corpus.h"
#include "reteval/generation.h"
#include "reteval/http_provider.h"
#include "reteval/io.h"
#include "reteval/judge.h"

namespace reteval {

/// Connection settings for one named provider. `type` is "mock" (offline
/// deterministic stand-ins) or "openai" (any OpenAI-compatible HTTP API).
struct ProviderConfig {
  std::string type = "mock";
  std::string base_url;
  std::string api_key_env;
  double timeout_seconds = 60.0;
  double requests_per_second = 0.0;
  RetryPolicy retry;
};

struct EmbedderProfile {
  std::string provider = "mock";
  std::string model = "hash-bow";
  std::string query_prefix;
  std::string passage_prefix;
  std::size_t dimension = 1024;  ///< mock provider only
  std::size_t batch_size = 64;
};

struct JudgeConfig {
  std::string provider = "mock";
  std::string model = "mock-judge";
  JudgeOptions options;
  ReferenceMode references = ReferenceMode::MultiReference;
};

/// Everything one evaluation run depends on. See docs/config.md for the
/// file schema. Relative paths in a config file resolve against the file's
/// directory.
struct RunConfig {
  std::filesystem::path dataset;
  std::filesystem::path corpus;
  std::vector<std::size_t> k_values{1, 5, 10};
  ChunkingOptions chunking;
  std::map<std::string, ProviderConfig> providers;  ///< always contains "mock"
  EmbedderProfile embedder;
  GeneratorProfile rag = default_rag();
  GeneratorProfile semigold = default_semigold();
  JudgeConfig judge;
  std::filesystem::path cache_dir = ".reteval-cache";
  std::filesystem::path out_dir = "out";
  std::size_t concurrency = 4;
  /// Fraction of items per stage allowed to fail before the run aborts.
  double failure_budget = 0.01;
  /// Replace every provider with the offline oracles.
  bool mock = false;

  static GeneratorProfile default_rag();
  static GeneratorProfile default_semigold();

  /// Throws ConfigError on the first invalid field.
  void validate() const;
  std::size_t max_k() const;

  static RunConfig from_json(const json& doc, const std::filesystem::path& base_dir);
  json to_json() const;
  /// SHA-256 of the canonical JSON form.
  std::string hash() const;
};

RunConfig load_config(const std::filesystem::path& path);

}  // namespace reteval
