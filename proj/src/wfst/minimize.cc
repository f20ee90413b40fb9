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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>
#include <vector>

#include "slu/base/errors.h"
#include "slu/wfst/ops.h"

namespace slu::wfst {
namespace {

long long QuantizeWeight(Weight w, double delta) {
  if (w.IsZero()) return std::numeric_limits<long long>::max();
  return std::llround(w.Value() / delta);
}

}  // namespace

Fst Minimize(const Fst &input, double delta) {
  if (!input.IsDeterministic()) {
    throw PreconditionError("Minimize requires a deterministic machine");
  }
  Fst fst = Push(Connect(input), PushMode::kWeights);
  const StateId n = fst.NumStates();
  if (n == 0) return fst;

  // Moore-style refinement: split classes by signature until stable.
  std::vector<int> cls(n, 0);
  int num_classes = 0;
  using Signature =
      std::tuple<int, long long, std::vector<std::tuple<Label, Label, long long, int>>>;
  for (;;) {
    std::map<Signature, int> ids;
    std::vector<int> next(n);
    for (StateId s = 0; s < n; ++s) {
      std::vector<std::tuple<Label, Label, long long, int>> arcs;
      for (const Arc &a : fst.Arcs(s)) {
        arcs.emplace_back(a.ilabel, a.olabel, QuantizeWeight(a.weight, delta),
                          cls[a.nextstate]);
      }
      std::sort(arcs.begin(), arcs.end());
      Signature sig{cls[s], QuantizeWeight(fst.Final(s), delta), std::move(arcs)};
      auto [it, inserted] = ids.emplace(std::move(sig), static_cast<int>(ids.size()));
      next[s] = it->second;
    }
    int count = static_cast<int>(ids.size());
    cls.swap(next);
    if (count == num_classes) break;
    num_classes = count;
  }

  // Renumber classes by their lowest member so minimal inputs keep their order.
  std::vector<int> order(num_classes, -1);
  int assigned = 0;
  for (StateId s = 0; s < n; ++s) {
    if (order[cls[s]] == -1) order[cls[s]] = assigned++;
  }
  Fst out;
  out.SetInputSymbols(fst.InputSymbols());
  out.SetOutputSymbols(fst.OutputSymbols());
  for (int c = 0; c < num_classes; ++c) out.AddState();
  std::vector<char> done(num_classes, 0);
  for (StateId s = 0; s < n; ++s) {
    int c = order[cls[s]];
    if (done[c]) continue;
    done[c] = 1;
    out.SetFinal(c, fst.Final(s));
    for (Arc a : fst.Arcs(s)) {
      a.nextstate = order[cls[a.nextstate]];
      out.AddArc(c, a);
    }
  }
  out.SetStart(order[cls[fst.Start()]]);
  return out;
}

}  // namespace slu::wfst
