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

#ifndef SLU_GRAMMAR_CLASS_LM_H_
#define SLU_GRAMMAR_CLASS_LM_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "slu/grammar/dataset.h"
#include "slu/ngram/ngram.h"
#include "slu/wfst/fst.h"

namespace slu::grammar {

struct ClassLmOptions {
  int pattern_order = 2;
  int slot_order = 3;
  // Removes <unk> arcs: the decoder has no pronunciation for them.
  bool drop_unknown = true;
};

// <eps>, the class symbols, <unk>, the pattern words, then each slot's words
// so that a slot's vocabulary occupies a contiguous id range.
std::shared_ptr<wfst::SymbolTable> BuildWordSymbols(const Dataset &dataset);

ngram::NGramCounts PatternCounts(const Dataset &dataset, int order);
// Gazetteer values plus annotated values. Empty gazetteer -> DefinitionError.
ngram::NGramCounts SlotCounts(const Dataset &dataset, const std::string &slot, int order);

// Back-off acceptor of a counts table: G_p for patterns, or a gazetteer
// slot acceptor (which rejects the empty string).
wfst::Fst PatternFst(const ngram::NGramCounts &counts,
                     std::shared_ptr<const wfst::SymbolTable> symbols, bool drop_unknown = true);
wfst::Fst GazetteerFst(const ngram::NGramCounts &counts,
                       std::shared_ptr<const wfst::SymbolTable> symbols, bool drop_unknown = true);

// Gazetteer kind: Katz model of the given order over the tokenized values.
// Grammar kind: the slot's machine with its labels mapped into `symbols`.
wfst::Fst BuildSlotAcceptor(const SlotDefinition &slot, int order,
                            std::shared_ptr<const wfst::SymbolTable> symbols,
                            const NormalizerOptions &normalizer = {},
                            bool drop_unknown = true);

// G = Replace(G_p, {G_s}), sorted on input labels.
wfst::Fst ReplaceSlots(const wfst::Fst &g_p, const std::map<std::string, wfst::Fst> &g_s,
                       const wfst::SymbolTable &symbols);

wfst::Fst AssembleG(const Dataset &dataset, const ClassLmOptions &options,
                    std::shared_ptr<const wfst::SymbolTable> symbols);

}  // namespace slu::grammar

#endif  // SLU_GRAMMAR_CLASS_LM_H_
