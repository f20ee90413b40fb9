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

#include "slu/wfst/fst.h"

#include <set>
#include <utility>

#include "slu/base/errors.h"

namespace slu::wfst {

StateId Fst::AddState() {
  states_.emplace_back();
  return static_cast<StateId>(states_.size() - 1);
}

void Fst::SetStart(StateId s) {
  if (s < 0 || s >= NumStates()) throw PreconditionError("start state out of range");
  start_ = s;
}

void Fst::SetFinal(StateId s, Weight w) { states_[s].final = w; }

void Fst::AddArc(StateId s, const Arc &arc) {
  if (arc.nextstate < 0 || arc.nextstate >= NumStates()) {
    throw PreconditionError("arc destination out of range");
  }
  states_[s].arcs.push_back(arc);
}

std::size_t Fst::TotalArcs() const {
  std::size_t n = 0;
  for (const State &st : states_) n += st.arcs.size();
  return n;
}

bool Fst::IsAcceptor() const {
  for (const State &st : states_) {
    for (const Arc &a : st.arcs) {
      if (a.ilabel != a.olabel) return false;
    }
  }
  return true;
}

bool Fst::IsDeterministic() const {
  for (const State &st : states_) {
    std::set<std::pair<Label, Label>> seen;
    for (const Arc &a : st.arcs) {
      if (a.ilabel == kEpsilon && a.olabel == kEpsilon) return false;
      if (!seen.emplace(a.ilabel, a.olabel).second) return false;
    }
  }
  return true;
}

bool Fst::IsAcyclic() const {
  // Iterative three-colour DFS.
  std::vector<int> colour(states_.size(), 0);
  for (StateId root = 0; root < NumStates(); ++root) {
    if (colour[root] != 0) continue;
    std::vector<std::pair<StateId, std::size_t>> stack{{root, 0}};
    colour[root] = 1;
    while (!stack.empty()) {
      auto &[s, next] = stack.back();
      if (next < states_[s].arcs.size()) {
        StateId n = states_[s].arcs[next++].nextstate;
        if (colour[n] == 1) return false;
        if (colour[n] == 0) {
          colour[n] = 1;
          stack.emplace_back(n, 0);
        }
      } else {
        colour[s] = 2;
        stack.pop_back();
      }
    }
  }
  return true;
}

bool Fst::Isomorphic(const Fst &other, double delta) const {
  if (NumStates() != other.NumStates() || start_ != other.start_) return false;
  for (StateId s = 0; s < NumStates(); ++s) {
    if (!ApproxEqual(Final(s), other.Final(s), delta)) return false;
    auto a = Arcs(s);
    auto b = other.Arcs(s);
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].ilabel != b[i].ilabel || a[i].olabel != b[i].olabel ||
          a[i].nextstate != b[i].nextstate ||
          !ApproxEqual(a[i].weight, b[i].weight, delta)) {
        return false;
      }
    }
  }
  return true;
}

Fst LinearAcceptor(std::span<const Label> labels, Weight final) {
  Fst fst;
  StateId s = fst.AddState();
  fst.SetStart(s);
  for (Label l : labels) {
    StateId n = fst.AddState();
    fst.AddArc(s, Arc{l, l, Weight::One(), n});
    s = n;
  }
  fst.SetFinal(s, final);
  return fst;
}

}  // namespace slu::wfst
