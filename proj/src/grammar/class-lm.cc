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

#include "slu/grammar/class-lm.h"

#include <set>

#include "slu/base/errors.h"
#include "slu/ngram/ngram-fst.h"
#include "slu/wfst/ops.h"

namespace slu::grammar {

using wfst::Fst;
using wfst::Label;

std::shared_ptr<wfst::SymbolTable> BuildWordSymbols(const Dataset &dataset) {
  auto syms = std::make_shared<wfst::SymbolTable>();
  for (const auto &[name, slot] : dataset.slots) syms->AddSymbol(ClassSymbol(name));
  syms->AddSymbol(ngram::kUnk);
  std::set<std::string> pattern_words;
  for (const auto &p : AbstractPatterns(dataset)) {
    for (const auto &t : p) pattern_words.insert(t);
  }
  for (const auto &w : pattern_words) {
    if (!syms->Contains(w)) syms->AddSymbol(w);
  }
  for (const auto &[name, slot] : dataset.slots) {
    std::set<std::string> words;
    for (const auto &v : SlotCorpus(dataset, name)) words.insert(v.begin(), v.end());
    if (slot.kind == SlotKind::kGrammar && slot.grammar_symbols) {
      for (Label l = 1; l < slot.grammar_symbols->Size(); ++l) {
        words.insert(slot.grammar_symbols->Symbol(l));
      }
    }
    for (const auto &w : words) syms->AddSymbol(w);
  }
  return syms;
}

ngram::NGramCounts PatternCounts(const Dataset &dataset, int order) {
  return ngram::CountNGrams(AbstractPatterns(dataset), order);
}

ngram::NGramCounts SlotCounts(const Dataset &dataset, const std::string &slot, int order) {
  auto it = dataset.slots.find(slot);
  if (it == dataset.slots.end()) throw DefinitionError("unknown slot '" + slot + "'");
  if (it->second.kind != SlotKind::kGazetteer) {
    throw DefinitionError("slot '" + slot + "' is not a gazetteer");
  }
  if (it->second.values.empty()) throw DefinitionError("gazetteer of slot '" + slot + "' is empty");
  return ngram::CountNGrams(SlotCorpus(dataset, slot), order);
}

namespace {

Fst CountsToFst(const ngram::NGramCounts &counts,
                std::shared_ptr<const wfst::SymbolTable> symbols, bool drop_unknown,
                bool allow_empty) {
  ngram::NGramFstOptions opts;
  opts.allow_empty = allow_empty;
  Fst fst = ngram::ToFst(ngram::EstimateKatz(counts), symbols, opts);
  if (drop_unknown) {
    fst = wfst::Connect(wfst::RemoveArcsWithLabels(fst, {symbols->Find(ngram::kUnk)}));
  }
  wfst::ArcSortInPlace(&fst, wfst::SortTape::kInput);
  return fst;
}

}  // namespace

Fst PatternFst(const ngram::NGramCounts &counts,
               std::shared_ptr<const wfst::SymbolTable> symbols, bool drop_unknown) {
  return CountsToFst(counts, std::move(symbols), drop_unknown, true);
}

Fst GazetteerFst(const ngram::NGramCounts &counts,
                 std::shared_ptr<const wfst::SymbolTable> symbols, bool drop_unknown) {
  return CountsToFst(counts, std::move(symbols), drop_unknown, false);
}

Fst BuildSlotAcceptor(const SlotDefinition &slot, int order,
                      std::shared_ptr<const wfst::SymbolTable> symbols,
                      const NormalizerOptions &normalizer, bool drop_unknown) {
  if (slot.kind == SlotKind::kGazetteer) {
    if (slot.values.empty()) throw DefinitionError("gazetteer of slot '" + slot.name + "' is empty");
    std::vector<Tokens> corpus;
    for (const auto &v : slot.values) {
      Tokens t = Normalize(v, normalizer);
      if (!t.empty()) corpus.push_back(std::move(t));
    }
    if (corpus.empty()) throw DefinitionError("gazetteer of slot '" + slot.name + "' is empty");
    return GazetteerFst(ngram::CountNGrams(corpus, order), symbols, drop_unknown);
  }
  Fst out = slot.grammar;
  for (wfst::StateId s = 0; s < out.NumStates(); ++s) {
    for (auto &a : out.MutableArcs(s)) {
      const std::string &word = slot.grammar_symbols->Symbol(a.ilabel);
      Label l = symbols->Find(word);
      if (l == wfst::kNoLabel) throw AlphabetError("grammar word '" + word + "' has no symbol");
      a.ilabel = a.olabel = l;
    }
  }
  out.SetInputSymbols(symbols);
  out.SetOutputSymbols(symbols);
  wfst::ArcSortInPlace(&out, wfst::SortTape::kInput);
  return out;
}

Fst ReplaceSlots(const Fst &g_p, const std::map<std::string, Fst> &g_s,
                 const wfst::SymbolTable &symbols) {
  std::map<Label, Fst> subs;
  std::set<Label> classes;
  for (Label l = 1; l < symbols.Size(); ++l) {
    const std::string &s = symbols.Symbol(l);
    if (s == ngram::kUnk) break;  // class symbols precede <unk>
    classes.insert(l);
  }
  for (const auto &[name, fst] : g_s) {
    Label l = symbols.Find(ClassSymbol(name));
    if (l == wfst::kNoLabel) throw AlphabetError("slot '" + name + "' has no class symbol");
    subs.emplace(l, fst);
  }
  Fst g = wfst::Replace(g_p, subs, classes);
  wfst::ArcSortInPlace(&g, wfst::SortTape::kInput);
  return g;
}

Fst AssembleG(const Dataset &dataset, const ClassLmOptions &options,
              std::shared_ptr<const wfst::SymbolTable> symbols) {
  Fst g_p = PatternFst(PatternCounts(dataset, options.pattern_order), symbols,
                       options.drop_unknown);
  std::map<std::string, Fst> g_s;
  for (const auto &[name, slot] : dataset.slots) {
    if (slot.kind == SlotKind::kGazetteer) {
      g_s[name] = GazetteerFst(SlotCounts(dataset, name, options.slot_order), symbols,
                               options.drop_unknown);
    } else {
      g_s[name] = BuildSlotAcceptor(slot, options.slot_order, symbols, dataset.normalizer,
                                    options.drop_unknown);
    }
  }
  return ReplaceSlots(g_p, g_s, *symbols);
}

}  // namespace slu::grammar
