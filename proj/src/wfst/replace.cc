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

#include <map>
#include <utility>

#include "slu/base/errors.h"
#include "slu/wfst/ops.h"

namespace slu::wfst {

Fst Replace(const Fst &root, const std::map<Label, Fst> &substitutions,
            const std::set<Label> &class_labels) {
  for (const auto &[label, sub] : substitutions) {
    for (StateId s = 0; s < sub.NumStates(); ++s) {
      for (const Arc &a : sub.Arcs(s)) {
        if (class_labels.count(a.ilabel) || class_labels.count(a.olabel)) {
          throw MissingClassError("substitution for class label " + std::to_string(label) +
                                  " contains class label " + std::to_string(a.ilabel) +
                                  "; nested replacement is not supported");
        }
      }
    }
  }

  Fst out;
  out.SetInputSymbols(root.InputSymbols());
  out.SetOutputSymbols(root.OutputSymbols());
  for (StateId s = 0; s < root.NumStates(); ++s) {
    out.AddState();
    out.SetFinal(s, root.Final(s));
  }
  if (root.Start() != kNoState) out.SetStart(root.Start());

  // (class label, destination) -> start state of the spliced copy.
  std::map<std::pair<Label, StateId>, StateId> copies;
  auto splice = [&](Label label, StateId destination) -> StateId {
    auto it = copies.find({label, destination});
    if (it != copies.end()) return it->second;
    const Fst &sub = substitutions.at(label);
    StateId offset = out.NumStates();
    for (StateId s = 0; s < sub.NumStates(); ++s) out.AddState();
    for (StateId s = 0; s < sub.NumStates(); ++s) {
      for (Arc a : sub.Arcs(s)) {
        a.nextstate += offset;
        out.AddArc(offset + s, a);
      }
      if (sub.IsFinal(s)) {
        out.AddArc(offset + s, Arc{kEpsilon, kEpsilon, sub.Final(s), destination});
      }
    }
    StateId entry = sub.Start() == kNoState ? kNoState : offset + sub.Start();
    copies.emplace(std::make_pair(label, destination), entry);
    return entry;
  };

  for (StateId s = 0; s < root.NumStates(); ++s) {
    for (const Arc &a : root.Arcs(s)) {
      bool in_class = class_labels.count(a.ilabel) > 0;
      bool out_class = class_labels.count(a.olabel) > 0;
      if (!in_class && !out_class) {
        out.AddArc(s, a);
        continue;
      }
      if (a.ilabel != a.olabel) {
        throw PreconditionError("class label " + std::to_string(in_class ? a.ilabel : a.olabel) +
                                " must appear on both tapes of its arc");
      }
      if (!substitutions.count(a.ilabel)) {
        throw MissingClassError("no substitution for class label " + std::to_string(a.ilabel));
      }
      StateId entry = splice(a.ilabel, a.nextstate);
      if (entry != kNoState) out.AddArc(s, Arc{kEpsilon, kEpsilon, a.weight, entry});
    }
  }
  return out;
}

}  // namespace slu::wfst
