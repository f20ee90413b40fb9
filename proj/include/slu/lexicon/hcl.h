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

#ifndef SLU_LEXICON_HCL_H_
#define SLU_LEXICON_HCL_H_

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "slu/lexicon/lexicon.h"
#include "slu/wfst/fst.h"

namespace slu::lexicon {

struct HclOptions {
  // Self-loop on the word-boundary state absorbing silence frames.
  bool optional_silence = true;
  wfst::Weight silence_weight = wfst::Weight::One();
};

// Adds every C1P symbol of `lexicon` to `words` (symbols already present keep
// their label).
void AddLexiconSymbols(const C1PLexicon &lexicon, wfst::SymbolTable *words);

// Frame-to-symbol transducer. State 0 is the start and only final state; each
// entry is a chain of phone arcs, each target carrying a self-loop on its
// phone, the symbol emitted on the first arc and an epsilon arc back to 0.
// Output symbols are `words`, which must contain every lexicon symbol. The
// result is arc-sorted on output labels.
wfst::Fst BuildHcl(const C1PLexicon &lexicon, const PhoneSet &phones,
                   std::shared_ptr<const wfst::SymbolTable> words, const HclOptions &options = {});

struct Injected {
  wfst::Fst hcl;
  C1PLexicon lexicon;
  std::shared_ptr<wfst::SymbolTable> words;
};

// Appends chains for pronunciations not yet in the lexicon. States of
// existing entries keep their ids. The word table is copied and extended.
Injected AddPronunciations(const wfst::Fst &hcl, const C1PLexicon &lexicon,
                           const std::vector<std::pair<std::string, std::vector<Pronunciation>>>
                               &new_words,
                           const PhoneSet &phones, const wfst::SymbolTable &words);

// Word label -> C1P symbol labels, for words whose symbols differ from the
// plain spelling. Used to move a word-level grammar onto the HCL alphabet.
std::map<wfst::Label, std::vector<wfst::Label>> VariantLabels(const C1PLexicon &lexicon,
                                                              const wfst::SymbolTable &words);

// Label of the original word for every label of `words`; labels that are not
// C1P variants map to themselves.
std::vector<wfst::Label> WordLabelMap(const C1PLexicon &lexicon, const wfst::SymbolTable &words);

}  // namespace slu::lexicon

#endif  // SLU_LEXICON_HCL_H_
