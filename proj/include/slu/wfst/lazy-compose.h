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

#ifndef SLU_WFST_LAZY_COMPOSE_H_
#define SLU_WFST_LAZY_COMPOSE_H_

#include <array>
#include <cstddef>
#include <deque>
#include <memory>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "slu/wfst/fst.h"
#include "slu/wfst/reachability.h"

namespace slu::wfst {

enum class ComposeFilter {
  // Same alignment discipline as ComposeStatic, computed on demand.
  kEpsilonSequencing,
  // Additionally skips left arcs whose output label the right state cannot
  // read, and never creates a state from which the two machines cannot read
  // a common label or finish together.
  kLabelReachability,
  // As kLabelReachability, and reweights every state by the cheapest next
  // step of the right machine so the decoder sees language-model cost early.
  kLabelReachabilityPushWeights,
};

std::string_view FilterName(ComposeFilter filter);
ComposeFilter ParseFilterName(std::string_view name);

struct ComposeStats {
  std::size_t discovered_states = 0;
  std::size_t expanded_states = 0;
  std::size_t arcs_created = 0;
  std::size_t arcs_pruned = 0;
  std::size_t dead_states = 0;
};

// On-demand composition of two shared, immutable machines.
//
// States are numbered in discovery order and memoized by (left state, right
// state, filter state); asking for the same state twice returns the cached
// expansion. An instance is not thread-safe: use one per decoding session.
class LazyComposeFst {
 public:
  struct Tuple {
    StateId left;
    StateId right;
    StateId filter;
  };

  // `left` must be arc-sorted on output labels, `right` on input labels.
  // Reachability indexes are built when the filter needs them and none is
  // supplied.
  LazyComposeFst(std::shared_ptr<const Fst> left, std::shared_ptr<const Fst> right,
                 ComposeFilter filter,
                 std::shared_ptr<const ReachabilityIndex> left_index = nullptr,
                 std::shared_ptr<const ReachabilityIndex> right_index = nullptr);

  // kNoState when the composition is empty.
  StateId Start();
  Weight Final(StateId s);
  std::span<const Arc> Arcs(StateId s);

  bool IsExpanded(StateId s) const { return expanded_[s] != 0; }
  Tuple StateTuple(StateId s) const { return tuples_[s]; }
  StateId NumKnownStates() const { return static_cast<StateId>(tuples_.size()); }
  ComposeFilter Filter() const { return filter_; }
  const ComposeStats &Stats() const { return stats_; }

  // Expands every reachable state and returns the result as a static machine
  // with the same state numbering.
  Fst Expand();

 private:
  struct KeyHash {
    std::size_t operator()(const std::array<StateId, 3> &t) const;
  };

  // kNoState for tuples pruned as dead.
  StateId FindOrAdd(StateId s1, StateId s2, StateId filter);
  void ExpandState(StateId s);
  bool Live(StateId s1, StateId s2, StateId filter) const;
  Weight Potential(StateId s1, StateId s2) const;

  std::shared_ptr<const Fst> left_;
  std::shared_ptr<const Fst> right_;
  ComposeFilter filter_;
  std::shared_ptr<const ReachabilityIndex> left_index_;
  std::shared_ptr<const ReachabilityIndex> right_index_;

  std::unordered_map<std::array<StateId, 3>, StateId, KeyHash> ids_;
  std::vector<Tuple> tuples_;
  std::vector<Weight> potential_;
  std::vector<char> expanded_;
  std::deque<std::vector<Arc>> arcs_;
  std::vector<Weight> finals_;
  StateId start_ = kNoState;
  bool start_computed_ = false;
  ComposeStats stats_;
};

// Builds the indexes a filter needs and checks sort order and alphabets.
LazyComposeFst ComposeLazy(std::shared_ptr<const Fst> left, std::shared_ptr<const Fst> right,
                           ComposeFilter filter);

}  // namespace slu::wfst

#endif  // SLU_WFST_LAZY_COMPOSE_H_
