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

#include "slu/engine/graph.h"

#include <set>

#include "slu/ngram/ngram.h"
#include "slu/wfst/ops.h"

namespace slu::engine {

std::vector<std::string> GrammarWords(const wfst::SymbolTable &words,
                                      const lexicon::C1PLexicon &lexicon) {
  std::vector<std::string> out;
  bool after_unk = false;
  for (const auto &s : words.Symbols()) {
    if (after_unk) {
      auto it = lexicon.WordMap().find(s);
      if (it == lexicon.WordMap().end() || it->second == s) out.push_back(s);
    }
    after_unk |= s == ngram::kUnk;
  }
  return out;
}

wfst::Fst SlotModel(const grammar::Dataset &dataset, const std::string &slot,
                    const grammar::ClassLmOptions &options,
                    std::shared_ptr<const wfst::SymbolTable> words) {
  const auto &def = dataset.slots.at(slot);
  if (def.kind == grammar::SlotKind::kGazetteer) {
    return grammar::GazetteerFst(grammar::SlotCounts(dataset, slot, options.slot_order), words,
                                 options.drop_unknown);
  }
  return grammar::BuildSlotAcceptor(def, options.slot_order, words, dataset.normalizer,
                                    options.drop_unknown);
}

GraphComponents BuildComponents(const grammar::Dataset &dataset,
                                const grammar::ClassLmOptions &options,
                                const lexicon::Lexicon &overrides,
                                const lexicon::HclOptions &hcl_options) {
  GraphComponents c;
  c.words = grammar::BuildWordSymbols(dataset);
  lexicon::Lexicon lex;
  for (const auto &w : GrammarWords(*c.words, c.lexicon)) {
    for (const auto &p : lexicon::G2p(w, overrides)) lex.Add(w, p);
  }
  lex.Validate(c.phones);
  c.lexicon = lexicon::C1PExpand(lex);
  lexicon::AddLexiconSymbols(c.lexicon, c.words.get());
  c.hcl = lexicon::BuildHcl(c.lexicon, c.phones, c.words, hcl_options);
  c.g_p = grammar::PatternFst(grammar::PatternCounts(dataset, options.pattern_order), c.words,
                              options.drop_unknown);
  for (const auto &[name, _] : dataset.slots) c.g_s[name] = SlotModel(dataset, name, options, c.words);
  return c;
}

DecodingGraph::DecodingGraph(const GraphComponents &c, wfst::ComposeFilter filter)
    : filter_(filter) {
  wfst::Fst g = grammar::ReplaceSlots(c.g_p, c.g_s, *c.words);
  g = wfst::ExpandLabels(g, lexicon::VariantLabels(c.lexicon, *c.words));
  wfst::ArcSortInPlace(&g, wfst::SortTape::kInput);
  g.SetInputSymbols(c.words);
  g.SetOutputSymbols(c.words);
  wfst::Fst hcl = c.hcl;
  hcl.SetOutputSymbols(c.words);
  hcl_ = std::make_shared<const wfst::Fst>(std::move(hcl));
  g_ = std::make_shared<const wfst::Fst>(std::move(g));
  if (filter_ != wfst::ComposeFilter::kEpsilonSequencing) {
    hcl_index_ = std::make_shared<const wfst::ReachabilityIndex>(
        wfst::ReachabilityIndex::Build(*hcl_, wfst::SortTape::kOutput));
    g_index_ = std::make_shared<const wfst::ReachabilityIndex>(
        wfst::ReachabilityIndex::Build(*g_, wfst::SortTape::kInput));
  }
  output_.words = c.words;
  output_.to_word = lexicon::WordLabelMap(c.lexicon, *c.words);
}

wfst::LazyComposeFst DecodingGraph::NewSession() const {
  return wfst::LazyComposeFst(hcl_, g_, filter_, hcl_index_, g_index_);
}

}  // namespace slu::engine
