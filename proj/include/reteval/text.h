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

#include <string>
#include <string_view>
#include <vector>

namespace reteval {

/// Canonical form for corpus and dataset text: control and format
/// characters (zero-width space, BOM, bidi marks, ...) removed, NFC
/// composed, every run of Unicode whitespace collapsed to one ASCII space,
/// ends trimmed. Invalid UTF-8 sequences become U+FFFD. Idempotent.
std::string normalize_text(std::string_view text);

/// Splits on ASCII space, tab, CR and LF. Empty tokens are dropped.
std::vector<std::string> whitespace_tokenize(std::string_view text);

/// Answer canonicalization used by exact-match and token-overlap judging:
/// lowercase, punctuation removed, English articles (a, an, the) removed,
/// whitespace collapsed.
std::string normalize_answer(std::string_view answer);

}  // namespace reteval
