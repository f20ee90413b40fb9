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

#ifndef SLU_WFST_REACHABILITY_H_
#define SLU_WFST_REACHABILITY_H_

#include <span>
#include <utility>
#include <vector>

#include "slu/wfst/fst.h"
#include "slu/wfst/ops.h"

namespace slu::wfst {

// Sorted, disjoint, half-open label intervals [begin, end).
class IntervalSet {
 public:
  IntervalSet() = default;
  // `labels` need not be sorted or unique.
  static IntervalSet FromLabels(std::vector<Label> labels);

  bool Contains(Label label) const;
  bool Intersects(const IntervalSet &other) const;
  bool Empty() const { return intervals_.empty(); }
  std::size_t NumIntervals() const { return intervals_.size(); }
  const std::vector<std::pair<Label, Label>> &Intervals() const { return intervals_; }

 private:
  std::vector<std::pair<Label, Label>> intervals_;
};

// For every state q, the labels that can be read next on one tape: the labels
// of non-epsilon arcs leaving any state reachable from q through arcs that
// are epsilon on that tape. The left operand of a composition is indexed on
// its output tape, the right operand on its input tape.
//
// The reachable set of q is stored as the list of states in q's epsilon
// closure that have labelled arcs ("frontier"), each with its own interval
// set, which keeps back-off chains and word-final loops compact.
class ReachabilityIndex {
 public:
  static ReachabilityIndex Build(const Fst &fst, SortTape tape);

  SortTape Tape() const { return tape_; }
  StateId NumStates() const { return static_cast<StateId>(direct_.size()); }

  // Labels on q's own arcs.
  const IntervalSet &Direct(StateId q) const { return direct_[q]; }
  // Whether `label` is readable from q after epsilon moves.
  bool Reachable(StateId q, Label label) const;
  // Whether the closures of q (this index) and r (other index) can read a
  // common label. With direct_only, q's closure is q itself.
  bool Intersects(StateId q, const ReachabilityIndex &other, StateId r,
                  bool direct_only = false) const;
  // A final state is reachable from q through epsilon moves.
  bool ReachesFinal(StateId q) const { return !final_cost_[q].IsZero(); }
  // Cheapest epsilon path plus final weight.
  Weight FinalCost(StateId q) const { return final_cost_[q]; }
  // Cheapest epsilon path plus one labelled arc.
  Weight MinArcCost(StateId q) const { return min_arc_cost_[q]; }

 private:
  SortTape tape_ = SortTape::kInput;
  std::vector<IntervalSet> direct_;
  std::vector<std::vector<StateId>> frontier_;
  std::vector<Weight> final_cost_;
  std::vector<Weight> min_arc_cost_;
};

}  // namespace slu::wfst

#endif  // SLU_WFST_REACHABILITY_H_
