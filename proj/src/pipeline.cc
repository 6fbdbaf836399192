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

#include "reteval/pipeline.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <tuple>

#include "reteval/cache.h"
#include "reteval/errors.h"
#include "reteval/hash.h"
#include "reteval/http_provider.h"
#include "reteval/mock_providers.h"
#include "reteval/parallel.h"
#include "reteval/version.h"

namespace reteval {
namespace fs = std::filesystem;

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Index: return "index";
    case Stage::Retrieve: return "retrieve";
    case Stage::Generate: return "generate";
    case Stage::SemiGold: return "semigold";
    case Stage::Judge: return "judge";
    case Stage::Report: return "report";
  }
  return "?";
}

Stage parse_stage(std::string_view name) {
  for (auto s : kAllStages) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown stage \"" + std::string(name) + "\"");
}

std::vector<Stage> upstream_of(Stage stage) {
  switch (stage) {
    case Stage::Index: return {};
    case Stage::Retrieve: return {Stage::Index};
    case Stage::Generate: return {Stage::Index, Stage::Retrieve};
    case Stage::SemiGold: return {Stage::Index};
    case Stage::Judge: return {Stage::Generate, Stage::SemiGold};
    case Stage::Report: return {Stage::Retrieve, Stage::Judge};
  }
  return {};
}

// --- providers ---------------------------------------------------------------

namespace {

HttpProviderOptions http_options(const ProviderConfig& p, const std::string& name,
                                 const std::string& model) {
  HttpProviderOptions o;
  o.name = name;
  o.base_url = p.base_url;
  o.model = model;
  o.api_key_env = p.api_key_env;
  o.timeout_seconds = p.timeout_seconds;
  o.requests_per_second = p.requests_per_second;
  o.retry = p.retry;
  return o;
}

bool uses_mock(const RunConfig& c, const std::string& provider) {
  return c.mock || c.providers.at(provider).type == "mock";
}

// Identity of the model behind a role, as far as it affects outputs.
json provider_identity(const RunConfig& c, const std::string& provider, const std::string& model) {
  if (c.mock) return {{"type", "mock"}, {"model", "builtin"}};
  const auto& p = c.providers.at(provider);
  return {{"type", p.type}, {"base_url", p.base_url}, {"model", model}};
}

std::string mock_model(const RunConfig& c, const std::string& configured, const char* builtin) {
  return c.mock ? std::string(builtin) : configured;
}

}  // namespace

ProviderSet make_providers(const RunConfig& config, std::span<const Question> dataset) {
  config.validate();
  ProviderSet set;
  const auto& emb = config.embedder;
  if (uses_mock(config, emb.provider)) {
    set.embedder = std::make_shared<HashEmbedder>(emb.dimension, mock_model(config, emb.model, "hash-bow"));
  } else {
    set.embedder = std::make_shared<OpenAiEmbeddingProvider>(
        http_options(config.providers.at(emb.provider), emb.provider, emb.model));
  }

  std::shared_ptr<MockOracleGenerator> oracle;
  auto generator = [&](const GeneratorProfile& g) -> std::shared_ptr<CompletionProvider> {
    if (uses_mock(config, g.provider_id)) {
      const auto model = mock_model(config, g.model_id, "mock-oracle");
      if (!oracle || oracle->model_id() != model) {
        oracle = std::make_shared<MockOracleGenerator>(dataset, model);
      }
      return oracle;
    }
    return std::make_shared<OpenAiCompletionProvider>(
        http_options(config.providers.at(g.provider_id), g.provider_id, g.model_id));
  };
  set.rag = generator(config.rag);
  set.semigold = generator(config.semigold);

  if (uses_mock(config, config.judge.provider)) {
    set.judge = std::make_shared<MockJudge>(mock_model(config, config.judge.model, "mock-judge"));
  } else {
    set.judge = std::make_shared<OpenAiCompletionProvider>(http_options(
        config.providers.at(config.judge.provider), config.judge.provider, config.judge.model));
  }
  return set;
}

// --- manifest ----------------------------------------------------------------

RunManifest RunManifest::load(const fs::path& path) {
  RunManifest m;
  if (!fs::exists(path)) return m;
  json doc;
  try {
    doc = json::parse(read_file(path));
    m.tool_version = doc.value("tool_version", "");
    m.config_hash = doc.value("config_hash", "");
    for (const auto& [name, s] : doc.at("stages").items()) {
      StageRecord r;
      r.key = s.at("key").get<std::string>();
      r.artifacts = s.at("artifacts").get<std::map<std::string, std::string>>();
      r.items = s.value("items", std::size_t{0});
      r.failures = s.value("failures", std::size_t{0});
      m.stages[name] = std::move(r);
    }
  } catch (const json::exception& e) {
    throw StaleArtifactError("unreadable manifest " + path.string() + ": " + e.what());
  }
  return m;
}

void RunManifest::save(const fs::path& path) const {
  json stages_json = json::object();
  for (const auto& [name, r] : stages) {
    stages_json[name] = {{"key", r.key},
                         {"artifacts", r.artifacts},
                         {"items", r.items},
                         {"failures", r.failures}};
  }
  const json doc = {{"tool_version", tool_version},
                    {"config_hash", config_hash},
                    {"stages", stages_json}};
  write_file_atomic(path, doc.dump(2) + "\n");
}

// --- pipeline ----------------------------------------------------------------

struct Pipeline::Decorated {
  std::shared_ptr<const DiskCache> cache;
  std::shared_ptr<CachingEmbedder> embed_cache;
  std::shared_ptr<EmbeddingProvider> embedder;
  std::shared_ptr<CachingCompletionProvider> rag;
  std::shared_ptr<CachingCompletionProvider> semigold;
  std::shared_ptr<CachingCompletionProvider> judge;
};

Pipeline::Pipeline(RunConfig config, ProviderSet providers)
    : config_(std::move(config)), providers_(std::make_shared<Decorated>()) {
  config_.validate();
  if (!providers.embedder || !providers.rag || !providers.semigold || !providers.judge) {
    throw ConfigError("pipeline: incomplete provider set");
  }
  auto& d = *providers_;
  d.cache = std::make_shared<DiskCache>(config_.cache_dir);
  d.embed_cache = std::make_shared<CachingEmbedder>(providers.embedder, d.cache);
  d.embedder = std::make_shared<PrefixingEmbedder>(d.embed_cache, config_.embedder.query_prefix,
                                                   config_.embedder.passage_prefix);
  d.rag = std::make_shared<CachingCompletionProvider>(providers.rag, d.cache);
  d.semigold = std::make_shared<CachingCompletionProvider>(providers.semigold, d.cache);
  d.judge = std::make_shared<CachingCompletionProvider>(providers.judge, d.cache);
}

ProviderCalls Pipeline::provider_calls() const {
  return {providers_->embed_cache->misses(), providers_->rag->misses(),
          providers_->semigold->misses(), providers_->judge->misses()};
}

namespace {

json generator_identity(const RunConfig& c, const GeneratorProfile& g) {
  return {{"provider", provider_identity(c, g.provider_id, g.model_id)},
          {"temperature", g.temperature},
          {"samples", g.samples},
          {"max_tokens", g.max_answer_tokens}};
}

json embedder_identity(const RunConfig& c) {
  return {{"provider", provider_identity(c, c.embedder.provider, c.embedder.model)},
          {"query_prefix", c.embedder.query_prefix},
          {"passage_prefix", c.embedder.passage_prefix},
          {"dimension", uses_mock(c, c.embedder.provider) ? c.embedder.dimension : 0}};
}

std::string stage_name(Stage s) { return std::string(to_string(s)); }

}  // namespace

std::string Pipeline::stage_key(Stage stage, const RunManifest& manifest) const {
  const auto& c = config_;
  json key = {{"stage", to_string(stage)}, {"tool_version", kToolVersion}};
  switch (stage) {
    case Stage::Index:
      key["corpus"] = sha256_file(c.corpus);
      key["chunking"] = {{"max_tokens", c.chunking.max_tokens}, {"overlap", c.chunking.overlap}};
      key["embedder"] = embedder_identity(c);
      break;
    case Stage::Retrieve:
      key["dataset"] = sha256_file(c.dataset);
      key["max_k"] = c.max_k();
      key["embedder"] = embedder_identity(c);
      break;
    case Stage::Generate:
      key["dataset"] = sha256_file(c.dataset);
      key["k"] = c.k_values;
      key["rag"] = generator_identity(c, c.rag);
      break;
    case Stage::SemiGold:
      key["dataset"] = sha256_file(c.dataset);
      key["semigold"] = generator_identity(c, c.semigold);
      break;
    case Stage::Judge: {
      const auto& j = c.judge;
      key["dataset"] = sha256_file(c.dataset);
      key["judge"] = {
          {"comparator", to_string(j.options.comparator)},
          {"references", j.references == ReferenceMode::MultiReference ? "multi" : "separate"},
          {"on_unparseable", j.options.parse_fallback == JudgeParseFallback::Fail ? "fail" : "no"}};
      switch (j.options.comparator) {
        case Comparator::LlmJudge:
          key["judge"]["provider"] = provider_identity(c, j.provider, j.model);
          key["judge"]["max_tokens"] = j.options.llm_max_tokens;
          break;
        case Comparator::TokenOverlap:
          key["judge"]["threshold"] = j.options.token_overlap_threshold;
          break;
        case Comparator::EmbeddingSim:
          key["judge"]["threshold"] = j.options.embedding_threshold;
          key["judge"]["embedder"] = embedder_identity(c);
          break;
        case Comparator::ExactMatch:
          break;
      }
      break;
    }
    case Stage::Report:
      key["dataset"] = sha256_file(c.dataset);
      key["k"] = c.k_values;
      break;
  }
  json upstream = json::object();
  for (auto up : upstream_of(stage)) {
    auto it = manifest.stages.find(stage_name(up));
    if (it == manifest.stages.end()) {
      throw DependencyError("stage '" + stage_name(stage) + "' requires stage '" + stage_name(up) +
                            "' to complete first");
    }
    upstream[stage_name(up)] = {{"key", it->second.key}, {"artifacts", it->second.artifacts}};
  }
  key["upstream"] = upstream;
  return sha256_hex(key.dump());
}

void Pipeline::check_upstream(Stage stage, const RunManifest& manifest) const {
  for (auto up : upstream_of(stage)) {
    auto it = manifest.stages.find(stage_name(up));
    if (it == manifest.stages.end()) {
      throw DependencyError("stage '" + stage_name(stage) + "' requires stage '" + stage_name(up) +
                            "' to complete first");
    }
    if (it->second.key != stage_key(up, manifest)) {
      throw StaleArtifactError("stage '" + stage_name(up) +
                               "' was run with different inputs or config; rerun it before '" +
                               stage_name(stage) + "'");
    }
    for (const auto& [file, digest] : it->second.artifacts) {
      const auto path = config_.out_dir / file;
      if (!fs::exists(path) || sha256_file(path) != digest) {
        throw StaleArtifactError("artifact " + path.string() + " does not match the manifest");
      }
    }
  }
}

bool Pipeline::is_current(Stage stage, const RunManifest& manifest) const {
  auto it = manifest.stages.find(stage_name(stage));
  if (it == manifest.stages.end()) return false;
  if (it->second.key != stage_key(stage, manifest)) return false;
  for (const auto& [file, digest] : it->second.artifacts) {
    const auto path = config_.out_dir / file;
    if (!fs::exists(path) || sha256_file(path) != digest) return false;
  }
  return true;
}

StageOutcome Pipeline::run_stage(Stage stage) {
  fs::create_directories(config_.out_dir);
  auto manifest = RunManifest::load(manifest_path());
  check_upstream(stage, manifest);

  StageOutcome outcome;
  outcome.stage = stage;
  const auto name = stage_name(stage);
  if (is_current(stage, manifest)) {
    const auto& rec = manifest.stages.at(name);
    outcome.skipped = true;
    for (const auto& [file, _] : rec.artifacts) outcome.artifacts.push_back(config_.out_dir / file);
    outcome.items = rec.items;
    outcome.failures = rec.failures;
    return outcome;
  }

  const auto key = stage_key(stage, manifest);
  if (manifest.stages.erase(name) > 0) manifest.save(manifest_path());

  StageRecord record;
  switch (stage) {
    case Stage::Index: record = run_index(); break;
    case Stage::Retrieve: record = run_retrieve(); break;
    case Stage::Generate: record = run_generate(); break;
    case Stage::SemiGold: record = run_semigold(); break;
    case Stage::Judge: record = run_judge(); break;
    case Stage::Report: record = run_report(); break;
  }
  record.key = key;

  if (static_cast<double>(record.failures) >
      config_.failure_budget * static_cast<double>(record.items)) {
    throw ProviderBudgetError("stage '" + name + "': " + std::to_string(record.failures) + " of " +
                              std::to_string(record.items) +
                              " items failed, exceeding the failure budget");
  }

  manifest.tool_version = kToolVersion;
  manifest.config_hash = config_.hash();
  manifest.stages[name] = record;
  manifest.save(manifest_path());

  for (const auto& [file, _] : record.artifacts) outcome.artifacts.push_back(config_.out_dir / file);
  outcome.items = record.items;
  outcome.failures = record.failures;
  return outcome;
}

std::vector<StageOutcome> Pipeline::run_all() {
  std::vector<StageOutcome> out;
  for (auto s : kAllStages) out.push_back(run_stage(s));
  return out;
}

// --- artifact io -------------------------------------------------------------

namespace {

json retrieval_to_json(const RetrievalResult& r) {
  json ranked = json::array();
  for (const auto& s : r.ranked) {
    ranked.push_back({{"chunk_id", s.chunk_id}, {"score", s.score}, {"rank", s.rank}});
  }
  return {{"question_id", r.question_id}, {"k", r.k}, {"ranked", ranked}};
}

void record_artifact(StageRecord& rec, const fs::path& out_dir, const char* name) {
  rec.artifacts[name] = sha256_file(out_dir / name);
}

std::map<std::string, RetrievalResult> retrieval_by_question(const fs::path& path) {
  std::map<std::string, RetrievalResult> out;
  for (auto& r : read_retrieval(path)) out.emplace(r.question_id, std::move(r));
  return out;
}

std::vector<Question> sorted_dataset(const fs::path& path) {
  auto questions = load_dataset(path);
  std::sort(questions.begin(), questions.end(),
            [](const auto& a, const auto& b) { return a.question_id < b.question_id; });
  return questions;
}

std::vector<Chunk> chunks_for(const ChunkStore& store, const RetrievalResult& r, std::size_t k) {
  std::vector<Chunk> chunks;
  for (const auto& id : r.top_ids(k)) chunks.push_back(store.at(id));
  return chunks;
}

std::vector<GeneratedAnswer> failed_answers(const GeneratorProfile& profile,
                                            const CompletionProvider& provider, const Question& q,
                                            AnswerSource source, const std::string& error) {
  std::vector<GeneratedAnswer> out;
  for (int s = 0; s < profile.samples; ++s) {
    GeneratedAnswer a;
    a.question_id = q.question_id;
    a.source = source;
    a.sample_index = s;
    a.model_id = provider.model_id();
    a.temperature = profile.temperature;
    a.error = error.empty() ? "provider failure" : error;
    out.push_back(std::move(a));
  }
  return out;
}

void write_answers(const fs::path& path, std::vector<GeneratedAnswer> answers) {
  sort_answers(answers);
  AtomicFileWriter out(path);
  for (const auto& a : answers) out.write_json_line(to_json(a));
  out.commit();
}

}  // namespace

std::vector<RetrievalResult> read_retrieval(const fs::path& path) {
  std::vector<RetrievalResult> out;
  for_each_jsonl(path, [&](std::size_t line, const json& rec) {
    try {
      RetrievalResult r;
      r.question_id = rec.at("question_id").get<std::string>();
      r.k = rec.at("k").get<std::size_t>();
      for (const auto& s : rec.at("ranked")) {
        r.ranked.push_back({s.at("chunk_id").get<std::string>(), s.at("score").get<double>(),
                            s.at("rank").get<std::size_t>()});
      }
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ParseError(std::string("retrieval record: ") + e.what(), line);
    }
  });
  return out;
}

std::vector<GeneratedAnswer> read_answers(const fs::path& path) {
  std::vector<GeneratedAnswer> out;
  for_each_jsonl(path, [&](std::size_t line, const json& rec) {
    out.push_back(answer_from_json(rec, line));
  });
  return out;
}

// --- stages ------------------------------------------------------------------

StageRecord Pipeline::run_index() {
  const auto& c = config_;
  const auto corpus = ingest_corpus(c.corpus);
  const auto chunks = chunk_corpus(corpus, c.chunking, c.concurrency);
  const auto index = Index::build(chunks, *providers_->embedder, c.concurrency, c.embedder.batch_size);
  write_chunks(c.out_dir / artifacts::kChunks, chunks);
  index.save(c.out_dir / artifacts::kIndex);
  StageRecord rec;
  rec.items = chunks.size();
  record_artifact(rec, c.out_dir, artifacts::kChunks);
  record_artifact(rec, c.out_dir, artifacts::kIndex);
  return rec;
}

StageRecord Pipeline::run_retrieve() {
  const auto& c = config_;
  const ChunkStore store(read_chunks(c.out_dir / artifacts::kChunks));
  const auto dataset = sorted_dataset(c.dataset);
  validate_gold_references(dataset, store);
  const auto index = Index::load(c.out_dir / artifacts::kIndex);
  const auto results = retrieve_all(index, *providers_->embedder, dataset, c.max_k(), c.concurrency);

  AtomicFileWriter jsonl(c.out_dir / artifacts::kRetrieval);
  for (const auto& r : results) jsonl.write_json_line(retrieval_to_json(r));
  jsonl.commit();
  AtomicFileWriter trec(c.out_dir / artifacts::kTrecRun);
  write_trec_run(trec.stream(), results, "reteval");
  trec.commit();

  StageRecord rec;
  rec.items = results.size();
  record_artifact(rec, c.out_dir, artifacts::kRetrieval);
  record_artifact(rec, c.out_dir, artifacts::kTrecRun);
  return rec;
}

StageRecord Pipeline::run_generate() {
  const auto& c = config_;
  const ChunkStore store(read_chunks(c.out_dir / artifacts::kChunks));
  const auto dataset = sorted_dataset(c.dataset);
  const auto retrieval = retrieval_by_question(c.out_dir / artifacts::kRetrieval);

  std::vector<std::pair<const Question*, std::size_t>> items;
  for (const auto& q : dataset) {
    if (!retrieval.contains(q.question_id)) {
      throw StaleArtifactError("no retrieval result for question \"" + q.question_id + "\"");
    }
    for (auto k : c.k_values) items.emplace_back(&q, k);
  }

  std::vector<std::vector<GeneratedAnswer>> produced(items.size());
  std::atomic<std::size_t> failures{0};
  auto& provider = *providers_->rag;
  parallel_for(items.size(), c.concurrency, [&](std::size_t i) {
    const auto& [q, k] = items[i];
    const auto chunks = chunks_for(store, retrieval.at(q->question_id), k);
    try {
      produced[i] = generate_answers(c.rag, provider, *q, chunks, AnswerSource::Retrieved);
    } catch (const ProviderError& e) {
      produced[i] = failed_answers(c.rag, provider, *q, AnswerSource::Retrieved, e.what());
      ++failures;
    } catch (const TransportError& e) {
      produced[i] = failed_answers(c.rag, provider, *q, AnswerSource::Retrieved, e.what());
      ++failures;
    }
    for (auto& a : produced[i]) a.k = k;
  });

  std::vector<GeneratedAnswer> all;
  for (auto& batch : produced) {
    for (auto& a : batch) all.push_back(std::move(a));
  }
  write_answers(c.out_dir / artifacts::kAnswers, std::move(all));

  StageRecord rec;
  rec.items = items.size();
  rec.failures = failures;
  record_artifact(rec, c.out_dir, artifacts::kAnswers);
  return rec;
}

StageRecord Pipeline::run_semigold() {
  const auto& c = config_;
  const ChunkStore store(read_chunks(c.out_dir / artifacts::kChunks));
  const auto dataset = sorted_dataset(c.dataset);
  validate_gold_references(dataset, store);

  std::vector<std::vector<GeneratedAnswer>> produced(dataset.size());
  std::atomic<std::size_t> failures{0};
  auto& provider = *providers_->semigold;
  parallel_for(dataset.size(), c.concurrency, [&](std::size_t i) {
    const auto& q = dataset[i];
    try {
      produced[i] = generate_semi_gold(c.semigold, provider, q, store);
    } catch (const ProviderError& e) {
      produced[i] = failed_answers(c.semigold, provider, q, AnswerSource::Gold, e.what());
      ++failures;
    } catch (const TransportError& e) {
      produced[i] = failed_answers(c.semigold, provider, q, AnswerSource::Gold, e.what());
      ++failures;
    }
  });

  std::vector<GeneratedAnswer> all;
  for (auto& batch : produced) {
    for (auto& a : batch) all.push_back(std::move(a));
  }
  write_answers(c.out_dir / artifacts::kSemiGold, std::move(all));

  StageRecord rec;
  rec.items = dataset.size();
  rec.failures = failures;
  record_artifact(rec, c.out_dir, artifacts::kSemiGold);
  return rec;
}

StageRecord Pipeline::run_judge() {
  const auto& c = config_;
  const auto dataset = sorted_dataset(c.dataset);
  std::map<std::string, const Question*> questions;
  for (const auto& q : dataset) {
    if (q.gold_answers.empty()) {
      throw IntegrityError("question \"" + q.question_id +
                           "\" has no gold answers; end-to-end judging needs them");
    }
    questions.emplace(q.question_id, &q);
  }

  std::map<std::pair<std::string, std::size_t>, GeneratedAnswer> rag_answers;
  for (auto& a : read_answers(c.out_dir / artifacts::kAnswers)) {
    if (a.source != AnswerSource::Retrieved || !a.k || a.sample_index != 0) continue;
    rag_answers.emplace(std::make_pair(a.question_id, *a.k), std::move(a));
  }
  std::map<std::string, std::vector<GeneratedAnswer>> semigold;
  for (auto& a : read_answers(c.out_dir / artifacts::kSemiGold)) {
    semigold[a.question_id].push_back(std::move(a));
  }

  const Judge judge(c.judge.options, providers_->judge.get(), providers_->embedder.get());
  std::vector<const std::pair<const std::pair<std::string, std::size_t>, GeneratedAnswer>*> items;
  for (const auto& entry : rag_answers) items.push_back(&entry);

  std::vector<std::vector<json>> produced(items.size());
  std::atomic<std::size_t> failures{0};
  parallel_for(items.size(), c.concurrency, [&](std::size_t i) {
    const auto& [key, rag] = *items[i];
    const auto qit = questions.find(key.first);
    if (qit == questions.end()) {
      throw StaleArtifactError("answer for unknown question \"" + key.first + "\"");
    }
    const Question& q = *qit->second;
    const auto sg = semigold.find(q.question_id);
    if (rag.failed() || sg == semigold.end() || semi_gold_references(sg->second).empty()) {
      ++failures;
      return;
    }
    try {
      auto reteval = reteval_verdict(judge, q.text, rag, sg->second, c.judge.references);
      auto e2e = judge.decide(q.question_id, q.text, q.gold_answers, rag.text);
      json a = to_json(reteval);
      a["k"] = key.second;
      a["target"] = "reteval";
      json b = to_json(e2e);
      b["k"] = key.second;
      b["target"] = "end_to_end";
      produced[i] = {std::move(b), std::move(a)};
    } catch (const JudgeParseError&) {
      throw;
    } catch (const ProviderError&) {
      ++failures;
    } catch (const TransportError&) {
      ++failures;
    }
  });

  AtomicFileWriter out(c.out_dir / artifacts::kVerdicts);
  for (const auto& pair : produced) {
    for (const auto& v : pair) out.write_json_line(v);
  }
  out.commit();

  StageRecord rec;
  rec.items = items.size();
  rec.failures = failures;
  record_artifact(rec, c.out_dir, artifacts::kVerdicts);
  return rec;
}

StageRecord Pipeline::run_report() {
  const auto& c = config_;
  const auto dataset = sorted_dataset(c.dataset);
  const auto retrieval = retrieval_by_question(c.out_dir / artifacts::kRetrieval);

  // (question, k) -> {reteval, end_to_end}
  std::map<std::pair<std::string, std::size_t>, std::pair<std::optional<bool>, std::optional<bool>>>
      verdicts;
  for_each_jsonl(c.out_dir / artifacts::kVerdicts, [&](std::size_t line, const json& rec) {
    try {
      auto& slot = verdicts[{rec.at("question_id").get<std::string>(), rec.at("k").get<std::size_t>()}];
      const auto target = rec.at("target").get<std::string>();
      const bool decision = rec.at("decision").get<bool>();
      if (target == "reteval") {
        slot.first = decision;
      } else if (target == "end_to_end") {
        slot.second = decision;
      } else {
        throw ParseError("unknown verdict target \"" + target + "\"", line);
      }
    } catch (const json::exception& e) {
      throw ParseError(std::string("verdict record: ") + e.what(), line);
    }
  });

  std::vector<QuestionEvalRecord> records;
  EvalReport report;
  std::vector<std::string> excluded;
  for (const auto& q : dataset) {
    std::vector<QuestionEvalRecord> mine;
    for (auto k : c.k_values) {
      auto v = verdicts.find({q.question_id, k});
      auto r = retrieval.find(q.question_id);
      if (v == verdicts.end() || !v->second.first || !v->second.second || r == retrieval.end()) {
        break;
      }
      const auto ranked = r->second.top_ids(k);
      mine.push_back(make_record(q.question_id, k, ranked, q.gold_chunk_ids, *v->second.first,
                                 *v->second.second));
    }
    if (mine.size() != c.k_values.size()) {
      excluded.push_back(q.question_id);
      continue;
    }
    for (auto& m : mine) records.push_back(std::move(m));
  }
  report = build_report(records, c.k_values);
  report.excluded_questions = excluded;

  AtomicFileWriter rec_out(c.out_dir / artifacts::kRecords);
  for (const auto& r : records) rec_out.write_json_line(to_json(r));
  rec_out.commit();
  write_file_atomic(c.out_dir / artifacts::kReport, to_json(report).dump(2) + "\n");
  write_file_atomic(c.out_dir / artifacts::kReportCsv, to_csv(report));

  StageRecord rec;
  rec.items = dataset.size();
  record_artifact(rec, c.out_dir, artifacts::kRecords);
  record_artifact(rec, c.out_dir, artifacts::kReport);
  record_artifact(rec, c.out_dir, artifacts::kReportCsv);
  return rec;
}

}  // namespace reteval
