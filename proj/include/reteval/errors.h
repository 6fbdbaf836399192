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
#include <stdexcept>
#include <string>

namespace reteval {

/// Base class of every error the harness raises. `exit_code()` maps the
/// error onto the CLI contract: 1 usage/config, 2 data integrity,
/// 3 provider failure budget exceeded.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 1; }
};

/// Violated function precondition (empty inputs, bad k, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input record. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }
  int exit_code() const override { return 2; }

 private:
  std::size_t line_;
};

/// Referential or uniqueness violation in loaded data.
class IntegrityError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

/// Mathematically undefined operation (zero vector cosine, constant input
/// to a rank correlation, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Retryable provider failure (connection refused, HTTP 429/5xx).
class TransportError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 3; }
};

/// Non-retryable provider failure, or retries exhausted.
class ProviderError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 3; }
};

/// LLM judge replied with something other than Yes/No.
class JudgeParseError : public ProviderError {
 public:
  JudgeParseError(const std::string& what, std::string raw)
      : ProviderError(what), raw_(std::move(raw)) {}
  const std::string& raw_output() const { return raw_; }

 private:
  std::string raw_;
};

class ProviderBudgetError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 3; }
};

/// A pipeline stage ran before the stages it depends on.
class DependencyError : public Error {
 public:
  using Error::Error;
};

/// A persisted artifact no longer matches the manifest or the current config.
class StaleArtifactError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

}  // namespace reteval
