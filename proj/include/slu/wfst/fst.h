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

#ifndef SLU_WFST_FST_H_
#define SLU_WFST_FST_H_

#include <memory>
#include <span>
#include <vector>

#include "slu/wfst/symbol-table.h"
#include "slu/wfst/weight.h"

namespace slu::wfst {

struct Arc {
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  Weight weight;
  StateId nextstate = kNoState;

  friend bool operator==(const Arc &, const Arc &) = default;
};

// Mutable vector-backed transducer over the tropical semiring.
//
// Instances are treated as immutable once built and shared across decoding
// sessions through shared_ptr<const Fst>.
class Fst {
 public:
  StateId AddState();
  void ReserveStates(StateId n) { states_.reserve(n); }
  void SetStart(StateId s);
  void SetFinal(StateId s, Weight w);
  void AddArc(StateId s, const Arc &arc);
  void DeleteArcs(StateId s) { states_[s].arcs.clear(); }
  void DeleteStates() {
    states_.clear();
    start_ = kNoState;
  }

  StateId Start() const { return start_; }
  StateId NumStates() const { return static_cast<StateId>(states_.size()); }
  Weight Final(StateId s) const { return states_[s].final; }
  bool IsFinal(StateId s) const { return !states_[s].final.IsZero(); }
  std::span<const Arc> Arcs(StateId s) const { return states_[s].arcs; }
  std::vector<Arc> &MutableArcs(StateId s) { return states_[s].arcs; }
  std::size_t NumArcs(StateId s) const { return states_[s].arcs.size(); }
  std::size_t TotalArcs() const;

  const std::shared_ptr<const SymbolTable> &InputSymbols() const { return isyms_; }
  const std::shared_ptr<const SymbolTable> &OutputSymbols() const { return osyms_; }
  void SetInputSymbols(std::shared_ptr<const SymbolTable> s) { isyms_ = std::move(s); }
  void SetOutputSymbols(std::shared_ptr<const SymbolTable> s) { osyms_ = std::move(s); }

  bool IsAcceptor() const;
  // No epsilon:epsilon arcs and at most one arc per (ilabel, olabel) pair.
  // For acceptors this is the usual notion of a deterministic automaton;
  // transducers are judged with their label pairs encoded as one symbol.
  bool IsDeterministic() const;
  bool IsAcyclic() const;

  // Structural identity including state numbering; symbol tables ignored.
  bool Isomorphic(const Fst &other, double delta = 1e-9) const;

 private:
  struct State {
    std::vector<Arc> arcs;
    Weight final = Weight::Zero();
  };
  std::vector<State> states_;
  StateId start_ = kNoState;
  std::shared_ptr<const SymbolTable> isyms_;
  std::shared_ptr<const SymbolTable> osyms_;
};

// Builds a single-path acceptor for a label sequence.
Fst LinearAcceptor(std::span<const Label> labels, Weight final = Weight::One());

}  // namespace slu::wfst

#endif  // SLU_WFST_FST_H_
