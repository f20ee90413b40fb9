// Copyright 2026 The SLU Engine Authors.
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

#include "slu/grammar/text.h"

#include <cctype>

namespace slu::grammar {

Tokens Normalize(std::string_view text, const NormalizerOptions &options) {
  Tokens out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) break;
    std::string_view tok = text.substr(i, j - i);
    if (options.strip_punctuation) {
      auto punct = [](char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; };
      while (!tok.empty() && punct(tok.front())) tok.remove_prefix(1);
      while (!tok.empty() && punct(tok.back())) tok.remove_suffix(1);
    }
    if (!tok.empty()) {
      std::string t(tok);
      if (options.lowercase) {
        for (char &c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
      out.push_back(std::move(t));
    }
    i = j;
  }
  return out;
}

std::string Join(const Tokens &tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

}  // namespace slu::grammar
