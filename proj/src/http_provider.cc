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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "reteval/http_provider.h"

#include <cstdlib>

#include <httplib.h>

#include "reteval/io.h"

namespace reteval {

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // "" or "/v1"
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("base_url needs a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, ""};
  std::string path = url.substr(path_start);
  while (!path.empty() && path.back() == '/') path.pop_back();
  return {url.substr(0, path_start), path};
}

std::string load_api_key(const HttpProviderOptions& options) {
  if (options.api_key_env.empty()) return {};
  const char* value = std::getenv(options.api_key_env.c_str());
  if (value == nullptr || *value == '\0') {
    throw ConfigError("provider \"" + options.name + "\": environment variable " +
                      options.api_key_env + " is not set");
  }
  return value;
}

json post_json(const HttpProviderOptions& options, const std::string& api_key,
               const std::string& endpoint, const json& body) {
  const auto url = split_url(options.base_url);
  httplib::Client client(url.origin);
  const auto timeout = std::chrono::duration<double>(options.timeout_seconds);
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  httplib::Headers headers;
  if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);

  auto res = client.Post(url.path + endpoint, headers, body.dump(), "application/json");
  if (!res) {
    throw TransportError(options.name + ": " + httplib::to_string(res.error()));
  }
  if (res->status == 429 || res->status >= 500) {
    throw TransportError(options.name + ": HTTP " + std::to_string(res->status));
  }
  if (res->status != 200) {
    throw ProviderError(options.name + ": HTTP " + std::to_string(res->status) + ": " +
                        res->body.substr(0, 200));
  }
  try {
    return json::parse(res->body);
  } catch (const json::parse_error&) {
    throw ProviderError(options.name + ": response is not JSON");
  }
}

}  // namespace

RateLimiter::RateLimiter(double requests_per_second) {
  if (requests_per_second > 0) {
    interval_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(1.0 / requests_per_second));
  }
}

void RateLimiter::acquire() {
  if (interval_.count() == 0) return;
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(mu_);
    const auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_);
    next_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
}

OpenAiCompletionProvider::OpenAiCompletionProvider(HttpProviderOptions options)
    : options_(std::move(options)),
      api_key_(load_api_key(options_)),
      limiter_(options_.requests_per_second) {
  split_url(options_.base_url);
}

std::string OpenAiCompletionProvider::complete(const CompletionRequest& request) {
  const json body = {
      {"model", options_.model},
      {"messages", json::array({{{"role", "user"}, {"content", request.prompt}}})},
      {"temperature", request.temperature},
      {"max_tokens", request.max_tokens},
  };
  const json reply = with_retries(options_.retry, [&] {
    limiter_.acquire();
    return post_json(options_, api_key_, "/chat/completions", body);
  });
  try {
    const auto& content = reply.at("choices").at(0).at("message").at("content");
    return content.is_null() ? std::string() : content.get<std::string>();
  } catch (const json::exception&) {
    throw ProviderError(options_.name + ": malformed chat completion response");
  }
}

OpenAiEmbeddingProvider::OpenAiEmbeddingProvider(HttpProviderOptions options)
    : options_(std::move(options)),
      api_key_(load_api_key(options_)),
      limiter_(options_.requests_per_second) {
  split_url(options_.base_url);
}

std::vector<Embedding> OpenAiEmbeddingProvider::do_embed(std::span<const std::string> texts,
                                                         EmbedKind) {
  const json body = {{"model", options_.model},
                     {"input", std::vector<std::string>(texts.begin(), texts.end())}};
  const json reply = with_retries(options_.retry, [&] {
    limiter_.acquire();
    return post_json(options_, api_key_, "/embeddings", body);
  });
  std::vector<Embedding> out(texts.size());
  try {
    const auto& data = reply.at("data");
    if (data.size() != texts.size()) throw ProviderError(options_.name + ": wrong embedding count");
    for (std::size_t i = 0; i < data.size(); ++i) {
      const auto& item = data[i];
      const std::size_t slot = item.contains("index") ? item.at("index").get<std::size_t>() : i;
      if (slot >= out.size()) throw ProviderError(options_.name + ": embedding index out of range");
      out[slot].values = item.at("embedding").get<std::vector<float>>();
    }
  } catch (const json::exception&) {
    throw ProviderError(options_.name + ": malformed embedding response");
  }
  return out;
}

}  // namespace reteval
