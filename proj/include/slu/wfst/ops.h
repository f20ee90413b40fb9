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

// Unary transducer algorithms used to build and optimize decoding graphs.
// All of them return a new machine and leave the input untouched.

#ifndef SLU_WFST_OPS_H_
#define SLU_WFST_OPS_H_

#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "slu/wfst/fst.h"

namespace slu::wfst {

enum class SortTape { kInput, kOutput };

// Stable sort of each state's arcs by (label on tape, other label, nextstate).
Fst ArcSort(const Fst &fst, SortTape tape);
void ArcSortInPlace(Fst *fst, SortTape tape);
bool IsArcSorted(const Fst &fst, SortTape tape);

// Keeps states that are both accessible and coaccessible. State order is
// preserved. A machine whose start cannot reach a final state becomes empty.
Fst Connect(const Fst &fst);

// Single-source shortest distances with a label-correcting queue, so negative
// arc weights are allowed as long as no cycle has negative total weight.
std::vector<Weight> ShortestDistanceFromStart(const Fst &fst);
// Distance from every state to a final state, final weight included.
std::vector<Weight> ShortestDistanceToFinal(const Fst &fst);

// Removes epsilon:epsilon arcs.
Fst RmEpsilon(const Fst &fst);

enum class PushMode { kWeights, kLabels };

// kWeights: reweights with the potential d(q) = distance to final, so every
// non-start state's cheapest completion costs 0 and weight moves toward the
// start. The start state keeps potential 0 since there is no initial weight.
// kLabels: moves an output label from the outgoing arcs of an acyclic,
// non-final, non-start state onto its incoming arcs when all outgoing arcs
// carry that label and all incoming arcs carry epsilon; repeated to fixpoint.
Fst Push(const Fst &fst, PushMode mode);

struct DeterminizeOptions {
  std::size_t max_states = 1'000'000;
  // Residual weights closer than this are treated as equal subsets.
  double delta = 1e-10;
};

// Weighted subset construction. Epsilon:epsilon arcs are removed first;
// transducers are determinized with (ilabel, olabel) pairs as symbols.
// Throws DeterminizeBudgetError past options.max_states.
Fst Determinize(const Fst &fst, const DeterminizeOptions &options = {});

// Weight pushing followed by partition refinement over (label pair, weight,
// destination class) signatures. Throws PreconditionError unless the input is
// deterministic.
Fst Minimize(const Fst &fst, double delta = 1e-9);

// Splices substitution machines into arcs labelled with a class label.
// One copy of a substitution is made per (class label, destination state), so
// all class arcs entering the same state share a copy. Entry arcs carry the
// class arc's weight, exit arcs carry the copy's final weights.
// Throws MissingClassError for class arcs without a substitution and for
// substitutions that themselves contain class labels.
Fst Replace(const Fst &root, const std::map<Label, Fst> &substitutions,
            const std::set<Label> &class_labels);

// Replaces each arc whose label (both tapes of an acceptor arc) appears in
// the map by one arc per listed label. Used to move a word-level grammar onto
// pronunciation-level symbols.
Fst ExpandLabels(const Fst &fst, const std::map<Label, std::vector<Label>> &expansion);

// Drops arcs whose input label satisfies the set.
Fst RemoveArcsWithLabels(const Fst &fst, const std::set<Label> &labels);

}  // namespace slu::wfst

#endif  // SLU_WFST_OPS_H_
