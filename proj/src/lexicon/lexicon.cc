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

#include "slu/lexicon/lexicon.h"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "slu/base/errors.h"

namespace slu::lexicon {

PhoneSet PhoneSet::Default() {
  std::vector<std::string> phones{kSilence};
  for (char c = 'a'; c <= 'z'; ++c) phones.emplace_back(1, c);
  return PhoneSet(phones);
}

PhoneSet::PhoneSet(const std::vector<std::string> &phones) {
  if (phones.empty()) throw ParameterError("phone set is empty");
  auto table = std::make_shared<wfst::SymbolTable>();
  for (const auto &p : phones) {
    if (p.empty() || p == wfst::kEpsilonSymbol || table->Contains(p)) {
      throw ParameterError("invalid or duplicate phone '" + p + "'");
    }
    table->AddSymbol(p);
  }
  symbols_ = std::move(table);
}

std::vector<std::string> PhoneSet::Phones() const {
  const auto &all = symbols_->Symbols();
  return {all.begin() + 1, all.end()};
}

void Lexicon::Add(const std::string &word, const Pronunciation &pronunciation) {
  if (word.empty()) throw ParameterError("lexicon entry with an empty word");
  if (pronunciation.empty()) throw ParameterError("empty pronunciation for '" + word + "'");
  auto &ids = index_[word];
  for (auto i : ids) {
    if (entries_[i].pronunciation == pronunciation) return;
  }
  ids.push_back(entries_.size());
  entries_.push_back({word, pronunciation});
}

std::vector<Pronunciation> Lexicon::Pronunciations(const std::string &word) const {
  std::vector<Pronunciation> out;
  auto it = index_.find(word);
  if (it == index_.end()) return out;
  for (auto i : it->second) out.push_back(entries_[i].pronunciation);
  return out;
}

void Lexicon::Validate(const PhoneSet &phones) const {
  for (const auto &e : entries_) {
    for (const auto &p : e.pronunciation) {
      if (!phones.Contains(p)) {
        throw ParameterError("pronunciation of '" + e.word + "' uses unknown phone '" + p + "'");
      }
    }
  }
}

Lexicon ReadLexicon(std::istream &in) {
  Lexicon lex;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) throw ParseError("expected word<TAB>phones", number);
    Pronunciation pron;
    std::istringstream phones(line.substr(tab + 1));
    for (std::string p; phones >> p;) pron.push_back(p);
    if (pron.empty()) throw ParseError("empty pronunciation", number);
    lex.Add(line.substr(0, tab), pron);
  }
  return lex;
}

void WriteLexicon(const Lexicon &lexicon, std::ostream &out) {
  for (const auto &e : lexicon.Entries()) {
    out << e.word << '\t';
    for (std::size_t i = 0; i < e.pronunciation.size(); ++i) {
      out << (i ? " " : "") << e.pronunciation[i];
    }
    out << '\n';
  }
}

C1PLexicon ReadC1PLexicon(std::istream &in) {
  C1PLexicon lex;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || t1 == 0 || t2 == t1 + 1) {
      throw ParseError("expected symbol<TAB>word<TAB>phones", number);
    }
    Pronunciation pron;
    std::istringstream phones(line.substr(t2 + 1));
    for (std::string p; phones >> p;) pron.push_back(p);
    if (pron.empty()) throw ParseError("empty pronunciation", number);
    const std::string symbol = line.substr(0, t1);
    if (lex.word_map_.count(symbol)) throw ParseError("duplicate symbol '" + symbol + "'", number);
    lex.Append(symbol, line.substr(t1 + 1, t2 - t1 - 1), pron);
  }
  return lex;
}

void WriteC1PLexicon(const C1PLexicon &lexicon, std::ostream &out) {
  for (const auto &e : lexicon.Entries()) {
    out << e.symbol << '\t' << lexicon.Word(e.symbol) << '\t';
    for (std::size_t i = 0; i < e.pronunciation.size(); ++i) {
      out << (i ? " " : "") << e.pronunciation[i];
    }
    out << '\n';
  }
}

std::vector<Pronunciation> G2p(const std::string &word, const Lexicon &overrides) {
  if (auto prons = overrides.Pronunciations(word); !prons.empty()) return prons;
  Pronunciation pron;
  for (unsigned char c : word) {
    c = static_cast<unsigned char>(std::tolower(c));
    if (c >= 'a' && c <= 'z') pron.emplace_back(1, static_cast<char>(c));
  }
  if (pron.empty()) throw G2pError("cannot pronounce '" + word + "'");
  return {pron};
}

std::vector<std::string> C1PLexicon::Symbols(const std::string &word) const {
  std::vector<std::string> out;
  auto it = by_word_.find(word);
  if (it == by_word_.end()) return out;
  for (auto i : it->second) out.push_back(entries_[i].symbol);
  return out;
}

std::vector<Pronunciation> C1PLexicon::Pronunciations(const std::string &word) const {
  std::vector<Pronunciation> out;
  auto it = by_word_.find(word);
  if (it == by_word_.end()) return out;
  for (auto i : it->second) out.push_back(entries_[i].pronunciation);
  return out;
}

const std::string &C1PLexicon::Word(const std::string &symbol) const {
  auto it = word_map_.find(symbol);
  if (it == word_map_.end()) throw ParameterError("unknown lexicon symbol '" + symbol + "'");
  return it->second;
}

void C1PLexicon::Append(const std::string &symbol, const std::string &word,
                        const Pronunciation &pron) {
  by_word_[word].push_back(entries_.size());
  entries_.push_back({symbol, pron});
  word_map_[symbol] = word;
}

std::string C1PLexicon::Add(const std::string &word, const Pronunciation &pronunciation) {
  if (pronunciation.empty()) throw ParameterError("empty pronunciation for '" + word + "'");
  auto it = by_word_.find(word);
  if (it == by_word_.end()) {
    Append(word, word, pronunciation);
    return word;
  }
  for (auto i : it->second) {
    if (entries_[i].pronunciation == pronunciation) return entries_[i].symbol;
  }
  std::string symbol;
  for (std::size_t k = it->second.size();; ++k) {
    symbol = word + "#" + std::to_string(k);
    if (!word_map_.count(symbol)) break;
  }
  Append(symbol, word, pronunciation);
  return symbol;
}

C1PLexicon C1PExpand(const Lexicon &lexicon) {
  std::map<std::string, std::size_t> count, seen;
  for (const auto &e : lexicon.Entries()) ++count[e.word];
  C1PLexicon out;
  for (const auto &e : lexicon.Entries()) {
    std::string symbol = e.word;
    if (count[e.word] > 1) symbol += "#" + std::to_string(seen[e.word]++);
    out.Append(symbol, e.word, e.pronunciation);
  }
  return out;
}

}  // namespace slu::lexicon
