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

// Checks a JSON document against the subset of JSON Schema used by
// docs/report.schema.json: type, const, enum, required, properties,
// additionalProperties (boolean), items, minItems, minimum, maximum.

#include <string>
#include <vector>

#include <json.hpp>

namespace schema_check {

using json = nlohmann::json;

inline bool has_type(const json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  return false;
}

inline void check(const json& v, const json& s, const std::string& at, std::vector<std::string>& errors) {
  if (auto t = s.find("type"); t != s.end()) {
    bool ok = false;
    if (t->is_string()) {
      ok = has_type(v, t->get<std::string>());
    } else {
      for (const auto& alt : *t) ok = ok || has_type(v, alt.get<std::string>());
    }
    if (!ok) {
      errors.push_back(at + ": wrong type");
      return;
    }
  }
  if (auto c = s.find("const"); c != s.end() && v != *c) errors.push_back(at + ": const mismatch");
  if (auto e = s.find("enum"); e != s.end()) {
    bool found = false;
    for (const auto& x : *e) found = found || x == v;
    if (!found) errors.push_back(at + ": not in enum");
  }
  if (v.is_number()) {
    if (auto m = s.find("minimum"); m != s.end() && v.get<double>() < m->get<double>()) {
      errors.push_back(at + ": below minimum");
    }
    if (auto m = s.find("maximum"); m != s.end() && v.get<double>() > m->get<double>()) {
      errors.push_back(at + ": above maximum");
    }
  }
  if (v.is_object()) {
    for (const auto& r : s.value("required", json::array())) {
      if (!v.contains(r.get<std::string>())) errors.push_back(at + ": missing " + r.get<std::string>());
    }
    const json props = s.value("properties", json::object());
    for (const auto& [key, val] : v.items()) {
      if (props.contains(key)) {
        check(val, props[key], at + "." + key, errors);
      } else if (s.value("additionalProperties", true) == false) {
        errors.push_back(at + ": unexpected " + key);
      }
    }
  }
  if (v.is_array()) {
    if (auto m = s.find("minItems"); m != s.end() && v.size() < m->get<std::size_t>()) {
      errors.push_back(at + ": too few items");
    }
    if (auto items = s.find("items"); items != s.end()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        check(v[i], *items, at + "[" + std::to_string(i) + "]", errors);
      }
    }
  }
}

inline std::vector<std::string> validate(const json& doc, const json& schema) {
  std::vector<std::string> errors;
  check(doc, schema, "$", errors);
  return errors;
}

}  // namespace schema_check
