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

#include "reteval/config.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "reteval/errors.h"
#include "reteval/hash.h"

namespace reteval {
namespace fs = std::filesystem;

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& where) {
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError(where + ": unknown key \"" + key + "\"");
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

fs::path resolve(const fs::path& base, const std::string& p) {
  if (p.empty()) return {};
  fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

void read_generator(const json& j, GeneratorProfile& g, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  reject_unknown(j, {"provider", "model", "temperature", "samples", "max_tokens"}, where);
  read(j, "provider", g.provider_id, where);
  read(j, "model", g.model_id, where);
  read(j, "temperature", g.temperature, where);
  read(j, "samples", g.samples, where);
  read(j, "max_tokens", g.max_answer_tokens, where);
}

json generator_json(const GeneratorProfile& g) {
  return {{"provider", g.provider_id},
          {"model", g.model_id},
          {"temperature", g.temperature},
          {"samples", g.samples},
          {"max_tokens", g.max_answer_tokens}};
}

}  // namespace

GeneratorProfile RunConfig::default_rag() {
  auto p = GeneratorProfile::rag_defaults();
  p.provider_id = "mock";
  p.model_id = "mock-oracle";
  return p;
}

GeneratorProfile RunConfig::default_semigold() {
  auto p = GeneratorProfile::semi_gold_defaults();
  p.provider_id = "mock";
  p.model_id = "mock-oracle";
  return p;
}

std::size_t RunConfig::max_k() const {
  return k_values.empty() ? 0 : *std::max_element(k_values.begin(), k_values.end());
}

void RunConfig::validate() const {
  if (dataset.empty()) throw ConfigError("config: \"dataset\" is required");
  if (corpus.empty()) throw ConfigError("config: \"corpus\" is required");
  if (k_values.empty()) throw ConfigError("config: \"k\" must list at least one value");
  std::set<std::size_t> seen;
  for (auto k : k_values) {
    if (k == 0) throw ConfigError("config: k values must be positive");
    if (!seen.insert(k).second) throw ConfigError("config: duplicate k value " + std::to_string(k));
  }
  if (chunking.max_tokens == 0 || chunking.overlap >= chunking.max_tokens) {
    throw ConfigError("config: chunking requires 0 <= overlap < max_tokens");
  }
  for (const auto& [name, p] : providers) {
    if (p.type != "mock" && p.type != "openai") {
      throw ConfigError("provider \"" + name + "\": unknown type \"" + p.type + "\"");
    }
    if (p.type == "openai" && p.base_url.empty()) {
      throw ConfigError("provider \"" + name + "\": base_url is required");
    }
    if (p.retry.max_attempts < 1) throw ConfigError("provider \"" + name + "\": retry.max_attempts must be >= 1");
  }
  for (const auto& [role, name] :
       {std::pair<std::string, std::string>{"embedder", embedder.provider},
        {"rag", rag.provider_id},
        {"semigold", semigold.provider_id},
        {"judge", judge.provider}}) {
    if (!providers.contains(name)) {
      throw ConfigError(role + ": provider \"" + name + "\" is not defined");
    }
  }
  if (embedder.dimension == 0 || embedder.batch_size == 0) {
    throw ConfigError("embedder: dimension and batch_size must be positive");
  }
  rag.validate();
  semigold.validate();
  judge.options.validate();
  if (concurrency == 0) throw ConfigError("config: concurrency must be >= 1");
  if (!(failure_budget >= 0.0 && failure_budget <= 1.0)) {
    throw ConfigError("config: failure_budget must be in [0, 1]");
  }
}

RunConfig RunConfig::from_json(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  reject_unknown(doc,
                 {"dataset", "corpus", "k", "chunking", "providers", "embedder", "rag", "semigold",
                  "judge", "cache_dir", "out_dir", "concurrency", "failure_budget", "mock"},
                 "config");
  RunConfig c;
  std::string dataset, corpus, cache_dir = c.cache_dir.string(), out_dir = c.out_dir.string();
  read(doc, "dataset", dataset, "config");
  read(doc, "corpus", corpus, "config");
  read(doc, "cache_dir", cache_dir, "config");
  read(doc, "out_dir", out_dir, "config");
  c.dataset = resolve(base_dir, dataset);
  c.corpus = resolve(base_dir, corpus);
  c.cache_dir = resolve(base_dir, cache_dir);
  c.out_dir = resolve(base_dir, out_dir);
  read(doc, "k", c.k_values, "config");
  read(doc, "concurrency", c.concurrency, "config");
  read(doc, "failure_budget", c.failure_budget, "config");
  read(doc, "mock", c.mock, "config");

  if (auto it = doc.find("chunking"); it != doc.end()) {
    reject_unknown(*it, {"max_tokens", "overlap"}, "chunking");
    read(*it, "max_tokens", c.chunking.max_tokens, "chunking");
    read(*it, "overlap", c.chunking.overlap, "chunking");
  }

  c.providers["mock"] = ProviderConfig{};
  if (auto it = doc.find("providers"); it != doc.end()) {
    if (!it->is_object()) throw ConfigError("providers: expected an object");
    for (const auto& [name, pj] : it->items()) {
      const std::string where = "providers." + name;
      if (!pj.is_object()) throw ConfigError(where + ": expected an object");
      reject_unknown(pj, {"type", "base_url", "api_key_env", "timeout_seconds",
                          "requests_per_second", "retry"}, where);
      ProviderConfig p;
      read(pj, "type", p.type, where);
      read(pj, "base_url", p.base_url, where);
      read(pj, "api_key_env", p.api_key_env, where);
      read(pj, "timeout_seconds", p.timeout_seconds, where);
      read(pj, "requests_per_second", p.requests_per_second, where);
      if (auto r = pj.find("retry"); r != pj.end()) {
        reject_unknown(*r, {"max_attempts", "base_delay_ms", "max_delay_ms"}, where + ".retry");
        read(*r, "max_attempts", p.retry.max_attempts, where);
        long long base = p.retry.base_delay.count(), max = p.retry.max_delay.count();
        read(*r, "base_delay_ms", base, where);
        read(*r, "max_delay_ms", max, where);
        p.retry.base_delay = std::chrono::milliseconds(base);
        p.retry.max_delay = std::chrono::milliseconds(max);
      }
      c.providers[name] = p;
    }
  }

  if (auto it = doc.find("embedder"); it != doc.end()) {
    reject_unknown(*it, {"provider", "model", "query_prefix", "passage_prefix", "dimension",
                         "batch_size"}, "embedder");
    read(*it, "provider", c.embedder.provider, "embedder");
    read(*it, "model", c.embedder.model, "embedder");
    read(*it, "query_prefix", c.embedder.query_prefix, "embedder");
    read(*it, "passage_prefix", c.embedder.passage_prefix, "embedder");
    read(*it, "dimension", c.embedder.dimension, "embedder");
    read(*it, "batch_size", c.embedder.batch_size, "embedder");
  }
  if (auto it = doc.find("rag"); it != doc.end()) read_generator(*it, c.rag, "rag");
  if (auto it = doc.find("semigold"); it != doc.end()) read_generator(*it, c.semigold, "semigold");
  if (auto it = doc.find("judge"); it != doc.end()) {
    reject_unknown(*it, {"provider", "model", "max_tokens", "comparator", "token_overlap_threshold",
                         "embedding_threshold", "references", "on_unparseable"}, "judge");
    read(*it, "provider", c.judge.provider, "judge");
    read(*it, "model", c.judge.model, "judge");
    read(*it, "max_tokens", c.judge.options.llm_max_tokens, "judge");
    read(*it, "token_overlap_threshold", c.judge.options.token_overlap_threshold, "judge");
    read(*it, "embedding_threshold", c.judge.options.embedding_threshold, "judge");
    std::string comparator = std::string(to_string(c.judge.options.comparator));
    read(*it, "comparator", comparator, "judge");
    c.judge.options.comparator = parse_comparator(comparator);
    std::string refs = "multi";
    read(*it, "references", refs, "judge");
    if (refs == "multi") {
      c.judge.references = ReferenceMode::MultiReference;
    } else if (refs == "separate") {
      c.judge.references = ReferenceMode::Separate;
    } else {
      throw ConfigError("judge.references: expected \"multi\" or \"separate\"");
    }
    std::string fallback = "fail";
    read(*it, "on_unparseable", fallback, "judge");
    if (fallback == "fail") {
      c.judge.options.parse_fallback = JudgeParseFallback::Fail;
    } else if (fallback == "no") {
      c.judge.options.parse_fallback = JudgeParseFallback::TreatAsNo;
    } else {
      throw ConfigError("judge.on_unparseable: expected \"fail\" or \"no\"");
    }
  }
  return c;
}

json RunConfig::to_json() const {
  json providers_json = json::object();
  for (const auto& [name, p] : providers) {
    providers_json[name] = {{"type", p.type},
                            {"base_url", p.base_url},
                            {"api_key_env", p.api_key_env},
                            {"timeout_seconds", p.timeout_seconds},
                            {"requests_per_second", p.requests_per_second},
                            {"retry",
                             {{"max_attempts", p.retry.max_attempts},
                              {"base_delay_ms", p.retry.base_delay.count()},
                              {"max_delay_ms", p.retry.max_delay.count()}}}};
  }
  return {
      {"dataset", dataset.string()},
      {"corpus", corpus.string()},
      {"k", k_values},
      {"chunking", {{"max_tokens", chunking.max_tokens}, {"overlap", chunking.overlap}}},
      {"providers", providers_json},
      {"embedder",
       {{"provider", embedder.provider},
        {"model", embedder.model},
        {"query_prefix", embedder.query_prefix},
        {"passage_prefix", embedder.passage_prefix},
        {"dimension", embedder.dimension},
        {"batch_size", embedder.batch_size}}},
      {"rag", generator_json(rag)},
      {"semigold", generator_json(semigold)},
      {"judge",
       {{"provider", judge.provider},
        {"model", judge.model},
        {"max_tokens", judge.options.llm_max_tokens},
        {"comparator", to_string(judge.options.comparator)},
        {"token_overlap_threshold", judge.options.token_overlap_threshold},
        {"embedding_threshold", judge.options.embedding_threshold},
        {"references", judge.references == ReferenceMode::MultiReference ? "multi" : "separate"},
        {"on_unparseable",
         judge.options.parse_fallback == JudgeParseFallback::Fail ? "fail" : "no"}}},
      {"cache_dir", cache_dir.string()},
      {"out_dir", out_dir.string()},
      {"concurrency", concurrency},
      {"failure_budget", failure_budget},
      {"mock", mock},
  };
}

std::string RunConfig::hash() const { return sha256_hex(to_json().dump()); }

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  auto base = path.has_parent_path() ? path.parent_path() : fs::path(".");
  return RunConfig::from_json(doc, base);
}

}  // namespace reteval
