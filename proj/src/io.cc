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

#include "reteval/io.h"

#include <atomic>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "reteval/errors.h"

namespace reteval {
namespace fs = std::filesystem;

namespace {

std::filesystem::path temp_sibling(const fs::path& path) {
  static std::atomic<unsigned long> counter{0};
  std::ostringstream name;
  name << '.' << path.filename().string() << ".tmp." << ::getpid() << '.'
       << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.'
       << counter.fetch_add(1);
  return path.parent_path() / name.str();
}

}  // namespace

void for_each_jsonl(const fs::path& path,
                    const std::function<void(std::size_t, const json&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(path.filename().string() + ": " + e.what(), number);
    }
    if (!record.is_object()) {
      throw ParseError(path.filename().string() + ": expected a JSON object", number);
    }
    fn(number, record);
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AtomicFileWriter::AtomicFileWriter(fs::path path)
    : path_(std::move(path)), tmp_(temp_sibling(path_)) {
  if (path_.has_parent_path()) fs::create_directories(path_.parent_path());
  out_.open(tmp_, std::ios::binary | std::ios::trunc);
  if (!out_) throw Error("cannot create " + tmp_.string());
}

AtomicFileWriter::~AtomicFileWriter() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    fs::remove(tmp_, ec);
  }
}

void AtomicFileWriter::write_json_line(const json& record) {
  out_ << record.dump() << '\n';
}

void AtomicFileWriter::commit() {
  out_.flush();
  if (!out_) throw Error("write failed: " + tmp_.string());
  out_.close();
  fs::rename(tmp_, path_);
  committed_ = true;
}

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  AtomicFileWriter w(path);
  w.write(bytes);
  w.commit();
}

std::string require_string(const json& obj, const char* field, std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end() || !it->is_string()) {
    throw ParseError(std::string("missing or non-string field \"") + field + "\"", line);
  }
  return it->get<std::string>();
}

std::vector<std::string> require_string_list(const json& obj, const char* field,
                                             std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end() || !it->is_array()) {
    throw ParseError(std::string("missing or non-array field \"") + field + "\"", line);
  }
  std::vector<std::string> out;
  out.reserve(it->size());
  for (const auto& v : *it) {
    if (!v.is_string()) {
      throw ParseError(std::string("non-string entry in \"") + field + "\"", line);
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace reteval
