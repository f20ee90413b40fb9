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

#ifndef SLU_GRAMMAR_DATASET_H_
#define SLU_GRAMMAR_DATASET_H_

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "slu/grammar/annotation.h"
#include "slu/wfst/fst.h"

namespace slu::grammar {

enum class SlotKind { kGazetteer, kGrammar };

struct SlotDefinition {
  std::string name;
  SlotKind kind = SlotKind::kGazetteer;
  std::vector<std::string> values;  // gazetteer kind, as written
  // Grammar kind: an epsilon-free acceptor over its own word symbols.
  wfst::Fst grammar;
  std::shared_ptr<wfst::SymbolTable> grammar_symbols;
};

struct Dataset {
  std::string language = "en";
  std::map<std::string, std::vector<AnnotatedUtterance>> intents;
  std::map<std::string, SlotDefinition> slots;
  NormalizerOptions normalizer;
};

// JSON dataset document. Relative grammar_file paths resolve against
// `base_dir`; `source` names the document in error messages.
Dataset ParseDataset(const std::string &json, const std::filesystem::path &base_dir = {},
                     const std::string &source = "dataset");
Dataset LoadDataset(const std::filesystem::path &path);

// Serializes back to the JSON document format; grammar slots are embedded as
// AT&T text under "grammar".
std::string DatasetToJson(const Dataset &dataset);

// Checks the invariants: at least one intent, utterances present, every
// referenced slot declared, grammar machines epsilon-free acceptors.
void ValidateDataset(const Dataset &dataset);

// One pattern per utterance, in intent order, duplicates kept.
std::vector<Tokens> AbstractPatterns(const Dataset &dataset);

// Tokenized gazetteer values of a slot followed by the values annotated for
// it in the utterances.
std::vector<Tokens> SlotCorpus(const Dataset &dataset, const std::string &slot);

}  // namespace slu::grammar

#endif  // SLU_GRAMMAR_DATASET_H_
