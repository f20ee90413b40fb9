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

#include "slu/grammar/annotation.h"

#include <cctype>

#include "slu/base/errors.h"

namespace slu::grammar {

Tokens AnnotatedUtterance::Words() const {
  Tokens out;
  for (const auto &s : segments) out.insert(out.end(), s.tokens.begin(), s.tokens.end());
  return out;
}

std::vector<SlotSpan> AnnotatedUtterance::Slots() const {
  std::vector<SlotSpan> out;
  std::size_t pos = 0;
  for (const auto &s : segments) {
    if (s.IsSlot()) out.push_back({s.slot, Join(s.tokens), pos, pos + s.tokens.size()});
    pos += s.tokens.size();
  }
  return out;
}

Tokens AnnotatedUtterance::Pattern() const {
  Tokens out;
  for (const auto &s : segments) {
    if (s.IsSlot()) {
      out.push_back(ClassSymbol(s.slot));
    } else {
      out.insert(out.end(), s.tokens.begin(), s.tokens.end());
    }
  }
  return out;
}

std::string ClassSymbol(std::string_view slot) {
  std::string out(slot);
  for (char &c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

AnnotatedUtterance ParseAnnotated(std::string_view raw, const NormalizerOptions &options) {
  AnnotatedUtterance u;
  u.raw = std::string(raw);
  std::string plain;
  auto flush = [&]() {
    if (plain.empty()) return;
    Segment s;
    s.raw = plain;
    s.tokens = Normalize(plain, options);
    u.segments.push_back(std::move(s));
    plain.clear();
  };
  std::size_t i = 0;
  while (i < raw.size()) {
    char c = raw[i];
    if (c == ')') throw AnnotationError("')' without matching '('", i);
    if (c == '[') throw AnnotationError("'[slot]' must follow a '(value)'", i);
    if (c == ']') throw AnnotationError("']' without matching '['", i);
    if (c != '(') {
      plain += c;
      ++i;
      continue;
    }
    const std::size_t open = i;
    std::size_t close = open + 1;
    while (close < raw.size() && raw[close] != ')') {
      if (raw[close] == '(' || raw[close] == '[' || raw[close] == ']') {
        throw AnnotationError("unbalanced '(' in chunk", open);
      }
      ++close;
    }
    if (close == raw.size()) throw AnnotationError("unterminated '('", open);
    if (close + 1 >= raw.size() || raw[close + 1] != '[') {
      throw AnnotationError("'(value)' must be followed by '[slot]'", open);
    }
    std::size_t end = close + 2;
    while (end < raw.size() && raw[end] != ']') {
      if (raw[end] == '[' || raw[end] == '(' || raw[end] == ')') {
        throw AnnotationError("malformed slot name", close + 1);
      }
      ++end;
    }
    if (end == raw.size()) throw AnnotationError("unterminated '['", close + 1);
    Segment s;
    s.raw = std::string(raw.substr(open + 1, close - open - 1));
    s.slot = std::string(raw.substr(close + 2, end - close - 2));
    for (char x : s.slot) {
      if (std::isspace(static_cast<unsigned char>(x))) {
        throw AnnotationError("slot name contains whitespace", close + 1);
      }
    }
    if (s.slot.empty()) throw AnnotationError("empty slot name", close + 1);
    s.tokens = Normalize(s.raw, options);
    if (s.tokens.empty()) throw AnnotationError("empty slot value", open);
    flush();
    u.segments.push_back(std::move(s));
    i = end + 1;
  }
  flush();
  return u;
}

std::string Render(const AnnotatedUtterance &utterance) {
  std::string out;
  for (const auto &s : utterance.segments) {
    if (s.IsSlot()) {
      out += "(" + s.raw + ")[" + s.slot + "]";
    } else {
      out += s.raw;
    }
  }
  return out;
}

}  // namespace slu::grammar
