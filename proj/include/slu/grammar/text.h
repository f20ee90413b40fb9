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

#ifndef SLU_GRAMMAR_TEXT_H_
#define SLU_GRAMMAR_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace slu::grammar {

using Tokens = std::vector<std::string>;

struct NormalizerOptions {
  bool lowercase = true;
  // Leading and trailing ASCII punctuation of each token.
  bool strip_punctuation = true;
};

// Whitespace tokenization followed by per-token normalization. Tokens left
// empty are dropped. Non-ASCII bytes pass through unchanged.
Tokens Normalize(std::string_view text, const NormalizerOptions &options = {});

std::string Join(const Tokens &tokens, std::string_view sep = " ");

}  // namespace slu::grammar

#endif  // SLU_GRAMMAR_TEXT_H_
