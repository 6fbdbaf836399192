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

#include <array>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reteval/analysis.h"
#include "reteval/completion.h"
#include "reteval/config.h"
#include "reteval/embedding.h"
#include "reteval/index.h"

namespace reteval {

enum class Stage { Index, Retrieve, Generate, SemiGold, Judge, Report };

inline constexpr std::array<Stage, 6> kAllStages = {Stage::Index,    Stage::Retrieve,
                                                    Stage::Generate, Stage::SemiGold,
                                                    Stage::Judge,    Stage::Report};

std::string_view to_string(Stage stage);
Stage parse_stage(std::string_view name);
/// Stages whose artifacts `stage` reads.
std::vector<Stage> upstream_of(Stage stage);

/// Undecorated provider handles for one run. The pipeline adds caching and
/// role prefixes on top.
struct ProviderSet {
  std::shared_ptr<EmbeddingProvider> embedder;
  std::shared_ptr<CompletionProvider> rag;
  std::shared_ptr<CompletionProvider> semigold;
  std::shared_ptr<CompletionProvider> judge;
};

/// Instantiates providers from the config; with `config.mock` (or providers
/// of type "mock") these are the offline oracles built from `dataset`.
ProviderSet make_providers(const RunConfig& config, std::span<const Question> dataset);

struct StageRecord {
  std::string key;
  std::map<std::string, std::string> artifacts;  ///< file name -> sha256
  std::size_t items = 0;
  std::size_t failures = 0;
};

/// Persistent record of completed stages in `<out>/manifest.json`. A stage
/// is complete iff it has an entry; entries are only written after every
/// artifact of the stage has been atomically renamed into place.
struct RunManifest {
  std::string tool_version;
  std::string config_hash;
  std::map<std::string, StageRecord> stages;

  static RunManifest load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

struct StageOutcome {
  Stage stage = Stage::Index;
  bool skipped = false;  ///< already complete with matching inputs
  std::vector<std::filesystem::path> artifacts;
  std::size_t items = 0;
  std::size_t failures = 0;
};

struct ProviderCalls {
  std::size_t embedder = 0;
  std::size_t rag = 0;
  std::size_t semigold = 0;
  std::size_t judge = 0;
  std::size_t total() const { return embedder + rag + semigold + judge; }
};

/// Resumable stage runner: index -> retrieve -> generate -> semigold ->
/// judge -> report. Every artifact is JSONL/JSON (index: binary) under the
/// output directory, written atomically, sorted by stable keys.
class Pipeline {
 public:
  Pipeline(RunConfig config, ProviderSet providers);

  const RunConfig& config() const { return config_; }
  std::filesystem::path manifest_path() const { return config_.out_dir / "manifest.json"; }

  /// Runs one stage. Requires every upstream stage to be complete and
  /// current (DependencyError / StaleArtifactError otherwise). A stage that
  /// is already complete with unchanged inputs is skipped.
  StageOutcome run_stage(Stage stage);

  /// Runs every stage in order, re-executing those whose inputs changed.
  std::vector<StageOutcome> run_all();

  /// Requests that reached the underlying providers (cache misses).
  ProviderCalls provider_calls() const;

 private:
  struct Decorated;

  std::string stage_key(Stage stage, const RunManifest& manifest) const;
  void check_upstream(Stage stage, const RunManifest& manifest) const;
  bool is_current(Stage stage, const RunManifest& manifest) const;

  StageRecord run_index();
  StageRecord run_retrieve();
  StageRecord run_generate();
  StageRecord run_semigold();
  StageRecord run_judge();
  StageRecord run_report();

  RunConfig config_;
  std::shared_ptr<Decorated> providers_;
};

/// Artifact file names, relative to the output directory.
namespace artifacts {
inline constexpr const char* kChunks = "chunks.jsonl";
inline constexpr const char* kIndex = "index.bin";
inline constexpr const char* kRetrieval = "retrieval.jsonl";
inline constexpr const char* kTrecRun = "run.trec";
inline constexpr const char* kAnswers = "answers.jsonl";
inline constexpr const char* kSemiGold = "semigold.jsonl";
inline constexpr const char* kVerdicts = "verdicts.jsonl";
inline constexpr const char* kRecords = "records.jsonl";
inline constexpr const char* kReport = "report.json";
inline constexpr const char* kReportCsv = "report.csv";
}  // namespace artifacts

std::vector<RetrievalResult> read_retrieval(const std::filesystem::path& path);
std::vector<GeneratedAnswer> read_answers(const std::filesystem::path& path);

}  // namespace reteval
