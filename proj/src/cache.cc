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

#include "reteval/cache.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "binary.h"
#include "reteval/hash.h"
#include "reteval/io.h"

namespace reteval {
namespace fs = std::filesystem;

namespace {

void put_field(std::string& out, std::string_view field) {
  binary::put_le<std::uint64_t>(out, field.size());
  out.append(field);
}

}  // namespace

std::string cache_key(std::string_view model_id, std::string_view prompt, double temperature,
                      int sample_index) {
  char temp[64];
  auto res = std::to_chars(temp, temp + sizeof(temp), temperature);
  std::string buf = "reteval.completion/1";
  put_field(buf, model_id);
  put_field(buf, prompt);
  put_field(buf, std::string_view(temp, static_cast<std::size_t>(res.ptr - temp)));
  binary::put_le<std::int64_t>(buf, sample_index);
  return sha256_hex(buf);
}

DiskCache::DiskCache(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

fs::path DiskCache::entry_path(std::string_view ns, std::string_view key) const {
  if (key.size() < 3) throw PreconditionError("cache key too short");
  return root_ / std::string(ns) / std::string(key.substr(0, 2)) / std::string(key);
}

std::optional<std::string> DiskCache::get(std::string_view ns, std::string_view key) const {
  const auto path = entry_path(ns, key);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void DiskCache::put(std::string_view ns, std::string_view key, std::string_view value) const {
  write_file_atomic(entry_path(ns, key), value);
}

}  // namespace reteval
