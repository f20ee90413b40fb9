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

#ifndef SLU_LEXICON_LEXICON_H_
#define SLU_LEXICON_LEXICON_H_

#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "slu/wfst/symbol-table.h"

namespace slu::lexicon {

using Pronunciation = std::vector<std::string>;

inline constexpr char kSilence[] = "sil";

// Phone inventory. Labels double as frame labels of the posterior matrix:
// column j of a posterior row belongs to phone label j + 1.
class PhoneSet {
 public:
  // "sil" followed by one phone per letter a-z.
  static PhoneSet Default();
  // Throws ParameterError on an empty list, duplicates or "<eps>".
  explicit PhoneSet(const std::vector<std::string> &phones);

  const std::shared_ptr<const wfst::SymbolTable> &Symbols() const { return symbols_; }
  // Number of phones, epsilon excluded.
  int Size() const { return static_cast<int>(symbols_->Size()) - 1; }
  wfst::Label Find(const std::string &phone) const { return symbols_->Find(phone); }
  const std::string &Phone(wfst::Label label) const { return symbols_->Symbol(label); }
  bool Contains(const std::string &phone) const { return symbols_->Contains(phone) && phone != "<eps>"; }
  std::vector<std::string> Phones() const;

 private:
  std::shared_ptr<const wfst::SymbolTable> symbols_;
};

struct LexiconEntry {
  std::string word;
  Pronunciation pronunciation;
  friend bool operator==(const LexiconEntry &, const LexiconEntry &) = default;
};

// Word pronunciations in insertion order. Adding an entry that is already
// present is a no-op.
class Lexicon {
 public:
  // Throws ParameterError on an empty pronunciation.
  void Add(const std::string &word, const Pronunciation &pronunciation);
  const std::vector<LexiconEntry> &Entries() const { return entries_; }
  std::vector<Pronunciation> Pronunciations(const std::string &word) const;
  bool Contains(const std::string &word) const { return index_.count(word) > 0; }
  std::size_t Size() const { return entries_.size(); }
  // Throws ParameterError naming the first phone outside the set.
  void Validate(const PhoneSet &phones) const;

 private:
  std::vector<LexiconEntry> entries_;
  std::map<std::string, std::vector<std::size_t>> index_;
};

// "word<TAB>phone phone ..." per line; blank lines and '#' comments skipped.
Lexicon ReadLexicon(std::istream &in);
void WriteLexicon(const Lexicon &lexicon, std::ostream &out);

// Override entries first; otherwise one letter phone per character a-z after
// lowercasing, other characters dropped. Throws G2pError when nothing is left.
std::vector<Pronunciation> G2p(const std::string &word, const Lexicon &overrides = {});

struct C1PEntry {
  std::string symbol;
  Pronunciation pronunciation;
  friend bool operator==(const C1PEntry &, const C1PEntry &) = default;
};

// Lexicon in which every symbol has exactly one pronunciation.
class C1PLexicon {
 public:
  const std::vector<C1PEntry> &Entries() const { return entries_; }
  const std::map<std::string, std::string> &WordMap() const { return word_map_; }
  // Symbols of a word in entry order.
  std::vector<std::string> Symbols(const std::string &word) const;
  std::vector<Pronunciation> Pronunciations(const std::string &word) const;
  const std::string &Word(const std::string &symbol) const;
  bool ContainsWord(const std::string &word) const { return by_word_.count(word) > 0; }
  // Adds a pronunciation. A new pronunciation of a known word gets the next
  // free "word#k" name; existing symbols are never renamed. Returns the
  // symbol, or the existing one when the pair is already present.
  std::string Add(const std::string &word, const Pronunciation &pronunciation);
  std::size_t Size() const { return entries_.size(); }

  friend bool operator==(const C1PLexicon &a, const C1PLexicon &b) {
    return a.entries_ == b.entries_ && a.word_map_ == b.word_map_;
  }

 private:
  friend C1PLexicon C1PExpand(const Lexicon &lexicon);

// "symbol<TAB>word<TAB>phones" per line, in entry order.
C1PLexicon ReadC1PLexicon(std::istream &in);
void WriteC1PLexicon(const C1PLexicon &lexicon, std::ostream &out);
  friend C1PLexicon ReadC1PLexicon(std::istream &in);
  void Append(const std::string &symbol, const std::string &word, const Pronunciation &pron);

  std::vector<C1PEntry> entries_;
  std::map<std::string, std::string> word_map_;
  std::map<std::string, std::vector<std::size_t>> by_word_;
};

// A word with m > 1 pronunciations becomes word#0 ... word#(m-1); other
// words keep their spelling as symbol.
C1PLexicon C1PExpand(const Lexicon &lexicon);

// "symbol<TAB>word<TAB>phones" per line, in entry order.
C1PLexicon ReadC1PLexicon(std::istream &in);
void WriteC1PLexicon(const C1PLexicon &lexicon, std::ostream &out);

}  // namespace slu::lexicon

#endif  // SLU_LEXICON_LEXICON_H_
