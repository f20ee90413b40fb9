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

#ifndef SLU_NGRAM_NGRAM_FST_H_
#define SLU_NGRAM_NGRAM_FST_H_

#include <memory>

#include "slu/ngram/ngram.h"
#include "slu/wfst/fst.h"

namespace slu::ngram {

struct NGramFstOptions {
  // When false the start state can only reach final states after at least one
  // token, so the acceptor rejects the empty string.
  bool allow_empty = true;
};

// Back-off acceptor: one state per context, token arcs weighted -ln P, epsilon
// back-off arcs weighted -ln(back-off), start at the <s> context, final
// weights from </s>. Symbols are attached to both tapes.
wfst::Fst ToFst(const NGramModel &model, std::shared_ptr<const wfst::SymbolTable> symbols,
                const NGramFstOptions &options = {});

}  // namespace slu::ngram

#endif  // SLU_NGRAM_NGRAM_FST_H_
