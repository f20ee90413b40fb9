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

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "slu/base/errors.h"
#include "slu/wfst/ops.h"

namespace slu::wfst {
namespace {

// A weighted subset: (state, residual weight), sorted by state.
using Subset = std::vector<std::pair<StateId, Weight>>;
using SubsetKey = std::vector<std::pair<StateId, long long>>;

SubsetKey Quantize(const Subset &subset, double delta) {
  SubsetKey key;
  key.reserve(subset.size());
  for (auto [s, w] : subset) key.emplace_back(s, std::llround(w.Value() / delta));
  return key;
}

}  // namespace

Fst Determinize(const Fst &input, const DeterminizeOptions &options) {
  Fst fst = RmEpsilon(input);
  Fst out;
  out.SetInputSymbols(input.InputSymbols());
  out.SetOutputSymbols(input.OutputSymbols());
  if (fst.Start() == kNoState) return out;

  std::map<SubsetKey, StateId> ids;
  std::vector<Subset> subsets;
  auto find_or_add = [&](Subset subset) {
    SubsetKey key = Quantize(subset, options.delta);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    if (subsets.size() >= options.max_states) {
      throw DeterminizeBudgetError("determinization exceeded " +
                                   std::to_string(options.max_states) + " states");
    }
    StateId id = out.AddState();
    ids.emplace(std::move(key), id);
    subsets.push_back(std::move(subset));
    return id;
  };

  out.SetStart(find_or_add(Subset{{fst.Start(), Weight::One()}}));
  for (StateId current = 0; current < static_cast<StateId>(subsets.size()); ++current) {
    // Copy: find_or_add may reallocate `subsets`.
    const Subset subset = subsets[current];
    Weight final = Weight::Zero();
    // label pair -> (destination -> best residual-adjusted weight)
    std::map<std::pair<Label, Label>, std::map<StateId, Weight>> moves;
    for (auto [s, residual] : subset) {
      final = Plus(final, Times(residual, fst.Final(s)));
      for (const Arc &a : fst.Arcs(s)) {
        auto &dest = moves[{a.ilabel, a.olabel}];
        Weight w = Times(residual, a.weight);
        auto [it, inserted] = dest.emplace(a.nextstate, w);
        if (!inserted) it->second = Plus(it->second, w);
      }
    }
    out.SetFinal(current, final);
    for (auto &[labels, dest] : moves) {
      Weight best = Weight::Zero();
      for (auto [s, w] : dest) best = Plus(best, w);
      Subset next;
      next.reserve(dest.size());
      for (auto [s, w] : dest) next.emplace_back(s, Divide(w, best));
      StateId target = find_or_add(std::move(next));
      out.AddArc(current, Arc{labels.first, labels.second, best, target});
    }
  }
  return out;
}

}  // namespace slu::wfst
