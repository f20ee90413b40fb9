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

#include "slu/lexicon/hcl.h"

#include "slu/base/errors.h"
#include "slu/wfst/ops.h"

namespace slu::lexicon {
namespace {

using wfst::Arc;
using wfst::Fst;
using wfst::Label;
using wfst::StateId;
using wfst::Weight;

void AddChain(Fst *hcl, const Pronunciation &pron, Label symbol, const PhoneSet &phones) {
  StateId prev = 0;
  for (std::size_t i = 0; i < pron.size(); ++i) {
    Label phone = phones.Find(pron[i]);
    if (phone == wfst::kNoLabel || phone == wfst::kEpsilon) {
      throw ParameterError("unknown phone '" + pron[i] + "'");
    }
    StateId s = hcl->AddState();
    hcl->AddArc(prev, Arc{phone, i == 0 ? symbol : wfst::kEpsilon, Weight::One(), s});
    hcl->AddArc(s, Arc{phone, wfst::kEpsilon, Weight::One(), s});
    prev = s;
  }
  hcl->AddArc(prev, Arc{wfst::kEpsilon, wfst::kEpsilon, Weight::One(), 0});
}

Label SymbolLabel(const wfst::SymbolTable &words, const std::string &symbol) {
  Label l = words.Find(symbol);
  if (l == wfst::kNoLabel) throw ConstructionError("lexicon symbol '" + symbol + "' has no label");
  return l;
}

}  // namespace

void AddLexiconSymbols(const C1PLexicon &lexicon, wfst::SymbolTable *words) {
  for (const auto &e : lexicon.Entries()) words->AddSymbol(e.symbol);
}

Fst BuildHcl(const C1PLexicon &lexicon, const PhoneSet &phones,
             std::shared_ptr<const wfst::SymbolTable> words, const HclOptions &options) {
  if (lexicon.Size() == 0) throw ConstructionError("cannot build HCL from an empty lexicon");
  Fst hcl;
  hcl.SetInputSymbols(phones.Symbols());
  hcl.SetOutputSymbols(words);
  hcl.AddState();
  hcl.SetStart(0);
  hcl.SetFinal(0, Weight::One());
  if (options.optional_silence) {
    Label sil = phones.Find(kSilence);
    if (sil == wfst::kNoLabel) throw ConstructionError("phone set has no silence phone");
    hcl.AddArc(0, Arc{sil, wfst::kEpsilon, options.silence_weight, 0});
  }
  for (const auto &e : lexicon.Entries()) {
    AddChain(&hcl, e.pronunciation, SymbolLabel(*words, e.symbol), phones);
  }
  wfst::ArcSortInPlace(&hcl, wfst::SortTape::kOutput);
  return hcl;
}

Injected AddPronunciations(
    const Fst &hcl, const C1PLexicon &lexicon,
    const std::vector<std::pair<std::string, std::vector<Pronunciation>>> &new_words,
    const PhoneSet &phones, const wfst::SymbolTable &words) {
  Injected out{hcl, lexicon, std::make_shared<wfst::SymbolTable>(words)};
  bool changed = false;
  for (const auto &[word, prons] : new_words) {
    for (const auto &pron : prons) {
      for (const auto &p : pron) {
        if (!phones.Contains(p)) {
          throw G2pError("pronunciation of '" + word + "' uses unknown phone '" + p + "'");
        }
      }
      const std::size_t before = out.lexicon.Size();
      std::string symbol = out.lexicon.Add(word, pron);
      if (out.lexicon.Size() == before) continue;
      AddChain(&out.hcl, pron, out.words->AddSymbol(symbol), phones);
      changed = true;
    }
  }
  if (changed) {
    wfst::ArcSortInPlace(&out.hcl, wfst::SortTape::kOutput);
  }
  out.hcl.SetOutputSymbols(out.words);
  return out;
}

std::map<Label, std::vector<Label>> VariantLabels(const C1PLexicon &lexicon,
                                                  const wfst::SymbolTable &words) {
  std::map<Label, std::vector<Label>> out;
  for (const auto &e : lexicon.Entries()) {
    const std::string &word = lexicon.Word(e.symbol);
    if (word == e.symbol) continue;
    Label w = words.Find(word);
    if (w == wfst::kNoLabel) continue;
    out[w].push_back(SymbolLabel(words, e.symbol));
  }
  // A word with a plain symbol and variants keeps the plain one too.
  for (auto &[w, labels] : out) {
    for (const auto &s : lexicon.Symbols(words.Symbol(w))) {
      if (s == words.Symbol(w)) labels.insert(labels.begin(), w);
    }
  }
  return out;
}

std::vector<Label> WordLabelMap(const C1PLexicon &lexicon, const wfst::SymbolTable &words) {
  std::vector<Label> map(words.Size());
  for (Label l = 0; l < words.Size(); ++l) map[l] = l;
  for (const auto &[symbol, word] : lexicon.WordMap()) {
    Label s = words.Find(symbol), w = words.Find(word);
    if (s != wfst::kNoLabel && w != wfst::kNoLabel) map[s] = w;
  }
  return map;
}

}  // namespace slu::lexicon
