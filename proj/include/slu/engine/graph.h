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

#ifndef SLU_ENGINE_GRAPH_H_
#define SLU_ENGINE_GRAPH_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "slu/decoder/decoder.h"
#include "slu/grammar/class-lm.h"
#include "slu/grammar/dataset.h"
#include "slu/lexicon/hcl.h"
#include "slu/lexicon/lexicon.h"
#include "slu/wfst/lazy-compose.h"

namespace slu::engine {

// The separately stored pieces of a decoding graph.
struct GraphComponents {
  lexicon::PhoneSet phones = lexicon::PhoneSet::Default();
  // Grammar words followed by C1P variant symbols; shared by every machine.
  std::shared_ptr<wfst::SymbolTable> words;
  lexicon::C1PLexicon lexicon;
  wfst::Fst hcl;
  wfst::Fst g_p;
  std::map<std::string, wfst::Fst> g_s;
};

// Every word of the grammar alphabet, in label order: labels after <unk>
// that are not C1P variant symbols.
std::vector<std::string> GrammarWords(const wfst::SymbolTable &words,
                                      const lexicon::C1PLexicon &lexicon);

// Slot model of one slot as used in the graph.
wfst::Fst SlotModel(const grammar::Dataset &dataset, const std::string &slot,
                    const grammar::ClassLmOptions &options,
                    std::shared_ptr<const wfst::SymbolTable> words);

GraphComponents BuildComponents(const grammar::Dataset &dataset,
                                const grammar::ClassLmOptions &options,
                                const lexicon::Lexicon &overrides = {},
                                const lexicon::HclOptions &hcl_options = {});

// Load-time assembly: G = Replace(G_p, {G_s}) moved onto C1P symbols, with
// reachability indexes shared by all decoding sessions.
class DecodingGraph {
 public:
  DecodingGraph(const GraphComponents &components, wfst::ComposeFilter filter);

  // A fresh lazy composition HCL o G; one per decoding session.
  wfst::LazyComposeFst NewSession() const;
  const decoder::OutputMap &Output() const { return output_; }
  const std::shared_ptr<const wfst::Fst> &Hcl() const { return hcl_; }
  const std::shared_ptr<const wfst::Fst> &G() const { return g_; }
  wfst::ComposeFilter Filter() const { return filter_; }

 private:
  wfst::ComposeFilter filter_;
  std::shared_ptr<const wfst::Fst> hcl_;
  std::shared_ptr<const wfst::Fst> g_;
  std::shared_ptr<const wfst::ReachabilityIndex> hcl_index_;
  std::shared_ptr<const wfst::ReachabilityIndex> g_index_;
  decoder::OutputMap output_;
};

}  // namespace slu::engine

#endif  // SLU_ENGINE_GRAPH_H_
