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

#include "slu/ngram/ngram-fst.h"

#include <cmath>
#include <map>

#include "slu/base/errors.h"
#include "slu/wfst/ops.h"

namespace slu::ngram {

using wfst::Arc;
using wfst::Fst;
using wfst::Label;
using wfst::StateId;
using wfst::Weight;

Fst ToFst(const NGramModel &model, std::shared_ptr<const wfst::SymbolTable> symbols,
          const NGramFstOptions &options) {
  const int order = model.Order();
  Fst fst;
  fst.SetInputSymbols(symbols);
  fst.SetOutputSymbols(symbols);

  std::map<Tokens, StateId> states;
  states[{}] = fst.AddState();
  for (int k = 1; k < order; ++k) {
    for (const auto &[gram, e] : model.Grams(k)) {
      if (gram.back() == kEos) continue;
      states[gram] = fst.AddState();
    }
  }

  auto label = [&](const std::string &token) {
    Label l = symbols->Find(token);
    if (l == wfst::kNoLabel) throw AlphabetError("token '" + token + "' has no symbol");
    return l;
  };
  auto destination = [&](Tokens g) {
    while (static_cast<int>(g.size()) > order - 1 || !states.count(g)) g.erase(g.begin());
    return states.at(g);
  };

  for (const auto &[h, s] : states) {
    // Explicit successors of h are the (|h|+1)-grams extending it.
    const int k = static_cast<int>(h.size()) + 1;
    const auto &table = model.Grams(k);
    auto it = table.lower_bound(h);
    for (; it != table.end(); ++it) {
      const Tokens &gram = it->first;
      if (!std::equal(h.begin(), h.end(), gram.begin())) break;
      const NGramEntry &e = it->second;
      if (std::isinf(e.logprob)) continue;
      if (gram.back() == kEos) {
        fst.SetFinal(s, Weight(-e.logprob));
        continue;
      }
      fst.AddArc(s, Arc{label(gram.back()), label(gram.back()), Weight(-e.logprob),
                        destination(gram)});
    }
    if (!h.empty()) {
      const NGramEntry *ctx = model.Find(h);
      double bo = ctx && ctx->has_backoff ? ctx->backoff : 0.0;
      Tokens lower(h.begin() + 1, h.end());
      fst.AddArc(s, Arc{wfst::kEpsilon, wfst::kEpsilon, Weight(-bo), states.at(lower)});
    }
  }

  const Tokens bos{std::string(kBos)};
  StateId start = order == 1 ? states.at({}) : states.at(bos);
  if (!options.allow_empty) {
    // A non-final copy of the unigram state takes the place of the back-off
    // target of the start context.
    StateId unigram = states.at({});
    StateId copy = fst.AddState();
    std::vector<Arc> arcs(fst.Arcs(unigram).begin(), fst.Arcs(unigram).end());
    for (const Arc &a : arcs) fst.AddArc(copy, a);
    if (order == 1) {
      start = copy;
    } else {
      fst.SetFinal(start, Weight::Zero());
      for (Arc &a : fst.MutableArcs(start)) {
        if (a.ilabel == wfst::kEpsilon && a.nextstate == unigram) a.nextstate = copy;
      }
    }
  }
  fst.SetStart(start);
  wfst::ArcSortInPlace(&fst, wfst::SortTape::kInput);
  return fst;
}

}  // namespace slu::ngram
