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

#ifndef SLU_GRAMMAR_ANNOTATION_H_
#define SLU_GRAMMAR_ANNOTATION_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "slu/grammar/text.h"

namespace slu::grammar {

// A run of plain text, or one "(value)[slot]" chunk. `raw` is the source text
// (the value only, for chunks).
struct Segment {
  std::string raw;
  std::string slot;  // empty for plain text
  Tokens tokens;

  bool IsSlot() const { return !slot.empty(); }
};

// Token span [begin, end) over the utterance's words.
struct SlotSpan {
  std::string slot;
  std::string value;  // normalized tokens joined by spaces
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const SlotSpan &, const SlotSpan &) = default;
};

struct AnnotatedUtterance {
  std::string raw;
  std::vector<Segment> segments;

  Tokens Words() const;
  std::vector<SlotSpan> Slots() const;
  // Chunks replaced by the class symbol of their slot.
  Tokens Pattern() const;
};

// Upper-cased slot name. Word tokens are lowercased by the default
// normalizer, so class symbols never collide with them.
std::string ClassSymbol(std::string_view slot);

AnnotatedUtterance ParseAnnotated(std::string_view raw, const NormalizerOptions &options = {});

// Inverse of ParseAnnotated on valid input.
std::string Render(const AnnotatedUtterance &utterance);

}  // namespace slu::grammar

#endif  // SLU_GRAMMAR_ANNOTATION_H_
