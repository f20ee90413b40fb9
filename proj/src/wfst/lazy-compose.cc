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

#include "slu/wfst/lazy-compose.h"

#include <algorithm>
#include <string>

#include "slu/base/errors.h"
#include "slu/wfst/compose.h"
#include "slu/wfst/ops.h"

namespace slu::wfst {
namespace {

constexpr StateId kDead = -2;

struct ByInput {
  bool operator()(const Arc &a, Label l) const { return a.ilabel < l; }
  bool operator()(Label l, const Arc &a) const { return l < a.ilabel; }
};

struct ByOutput {
  bool operator()(const Arc &a, Label l) const { return a.olabel < l; }
  bool operator()(Label l, const Arc &a) const { return l < a.olabel; }
};

}  // namespace

std::string_view FilterName(ComposeFilter filter) {
  switch (filter) {
    case ComposeFilter::kEpsilonSequencing:
      return "epsilon-sequencing";
    case ComposeFilter::kLabelReachability:
      return "label-reachability";
    case ComposeFilter::kLabelReachabilityPushWeights:
      return "label-reachability-push";
  }
  return "unknown";
}

ComposeFilter ParseFilterName(std::string_view name) {
  for (ComposeFilter f : {ComposeFilter::kEpsilonSequencing, ComposeFilter::kLabelReachability,
                          ComposeFilter::kLabelReachabilityPushWeights}) {
    if (FilterName(f) == name) return f;
  }
  throw ParameterError("unknown composition filter '" + std::string(name) + "'");
}

std::size_t LazyComposeFst::KeyHash::operator()(const std::array<StateId, 3> &t) const {
  std::size_t h = static_cast<std::size_t>(t[0]) * 0x9E3779B97F4A7C15ULL;
  h ^= static_cast<std::size_t>(t[1]) + 0x7F4A7C15ULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::size_t>(t[2]) + (h << 6) + (h >> 2);
  return h;
}

LazyComposeFst::LazyComposeFst(std::shared_ptr<const Fst> left,
                               std::shared_ptr<const Fst> right, ComposeFilter filter,
                               std::shared_ptr<const ReachabilityIndex> left_index,
                               std::shared_ptr<const ReachabilityIndex> right_index)
    : left_(std::move(left)),
      right_(std::move(right)),
      filter_(filter),
      left_index_(std::move(left_index)),
      right_index_(std::move(right_index)) {
  CheckComposeAlphabets(*left_, *right_);
  if (!IsArcSorted(*left_, SortTape::kOutput)) {
    throw PreconditionError("lazy composition: left machine must be sorted on output labels");
  }
  if (!IsArcSorted(*right_, SortTape::kInput)) {
    throw PreconditionError("lazy composition: right machine must be sorted on input labels");
  }
  if (filter_ == ComposeFilter::kEpsilonSequencing) return;
  if (!left_index_) {
    left_index_ = std::make_shared<ReachabilityIndex>(
        ReachabilityIndex::Build(*left_, SortTape::kOutput));
  }
  if (!right_index_) {
    right_index_ = std::make_shared<ReachabilityIndex>(
        ReachabilityIndex::Build(*right_, SortTape::kInput));
  }
  if (left_index_->Tape() != SortTape::kOutput || right_index_->Tape() != SortTape::kInput ||
      left_index_->NumStates() != left_->NumStates() ||
      right_index_->NumStates() != right_->NumStates()) {
    throw PreconditionError("lazy composition: reachability index does not match its machine");
  }
}

bool LazyComposeFst::Live(StateId s1, StateId s2, StateId filter) const {
  if (filter_ == ComposeFilter::kEpsilonSequencing) return true;
  // After an input-epsilon move of the right machine the left one may not
  // take epsilon moves, so only its own arcs count.
  const bool direct_only = filter != 0;
  if (left_index_->Intersects(s1, *right_index_, s2, direct_only)) return true;
  bool left_final = direct_only ? left_->IsFinal(s1) : left_index_->ReachesFinal(s1);
  return left_final && right_index_->ReachesFinal(s2);
}

Weight LazyComposeFst::Potential(StateId s1, StateId s2) const {
  Weight p = Weight::Zero();
  if (left_index_->Intersects(s1, *right_index_, s2)) p = right_index_->MinArcCost(s2);
  if (left_index_->ReachesFinal(s1) && right_index_->ReachesFinal(s2)) {
    p = Plus(p, right_index_->FinalCost(s2));
  }
  return p;
}

StateId LazyComposeFst::FindOrAdd(StateId s1, StateId s2, StateId filter) {
  std::array<StateId, 3> key{s1, s2, filter};
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second == kDead ? kNoState : it->second;
  if (!Live(s1, s2, filter)) {
    ids_.emplace(key, kDead);
    ++stats_.dead_states;
    return kNoState;
  }
  StateId id = static_cast<StateId>(tuples_.size());
  ids_.emplace(key, id);
  tuples_.push_back(Tuple{s1, s2, filter});
  potential_.push_back(filter_ == ComposeFilter::kLabelReachabilityPushWeights
                           ? Potential(s1, s2)
                           : Weight::One());
  expanded_.push_back(0);
  arcs_.emplace_back();
  finals_.push_back(Weight::Zero());
  ++stats_.discovered_states;
  return id;
}

StateId LazyComposeFst::Start() {
  if (!start_computed_) {
    start_computed_ = true;
    if (left_->Start() != kNoState && right_->Start() != kNoState) {
      start_ = FindOrAdd(left_->Start(), right_->Start(), 0);
      // No initial weight: the start state's potential is fixed at One.
      if (start_ != kNoState) potential_[start_] = Weight::One();
    }
  }
  return start_;
}

Weight LazyComposeFst::Final(StateId s) {
  if (!expanded_[s]) ExpandState(s);
  return finals_[s];
}

std::span<const Arc> LazyComposeFst::Arcs(StateId s) {
  if (!expanded_[s]) ExpandState(s);
  return arcs_[s];
}

void LazyComposeFst::ExpandState(StateId s) {
  const Tuple t = tuples_[s];
  const Weight here = potential_[s];
  std::vector<Arc> out;
  auto emit = [&](Label ilabel, Label olabel, Weight w, StateId next) {
    if (next == kNoState) {
      ++stats_.arcs_pruned;
      return;
    }
    out.push_back(Arc{ilabel, olabel, Divide(Times(w, potential_[next]), here), next});
  };

  auto left_arcs = left_->Arcs(t.left);
  auto right_arcs = right_->Arcs(t.right);
  auto left_labelled = std::lower_bound(left_arcs.begin(), left_arcs.end(), 1, ByOutput());
  auto right_labelled = std::lower_bound(right_arcs.begin(), right_arcs.end(), 1, ByInput());

  // Output-epsilon moves of the left machine.
  if (t.filter == 0) {
    for (auto e1 = left_arcs.begin(); e1 != left_labelled; ++e1) {
      emit(e1->ilabel, kEpsilon, e1->weight, FindOrAdd(e1->nextstate, t.right, 0));
    }
  }

  // Matched labels: walk the shorter side and binary-search the longer one.
  const auto num_left = left_arcs.end() - left_labelled;
  const auto num_right = right_arcs.end() - right_labelled;
  const bool reach = filter_ != ComposeFilter::kEpsilonSequencing;
  if (num_left <= num_right) {
    for (auto e1 = left_labelled; e1 != left_arcs.end(); ++e1) {
      if (reach && !right_index_->Direct(t.right).Contains(e1->olabel)) {
        ++stats_.arcs_pruned;
        continue;
      }
      auto range = std::equal_range(right_labelled, right_arcs.end(), e1->olabel, ByInput());
      for (auto e2 = range.first; e2 != range.second; ++e2) {
        emit(e1->ilabel, e2->olabel, Times(e1->weight, e2->weight),
             FindOrAdd(e1->nextstate, e2->nextstate, 0));
      }
    }
  } else {
    if (reach) stats_.arcs_pruned += static_cast<std::size_t>(num_left);
    for (auto e2 = right_labelled; e2 != right_arcs.end();) {
      Label label = e2->ilabel;
      auto right_end = std::upper_bound(e2, right_arcs.end(), label, ByInput());
      auto range = std::equal_range(left_labelled, left_arcs.end(), label, ByOutput());
      for (auto e1 = range.first; e1 != range.second; ++e1) {
        if (reach) --stats_.arcs_pruned;
        for (auto r = e2; r != right_end; ++r) {
          emit(e1->ilabel, r->olabel, Times(e1->weight, r->weight),
               FindOrAdd(e1->nextstate, r->nextstate, 0));
        }
      }
      e2 = right_end;
    }
  }

  // Input-epsilon moves of the right machine.
  for (auto e2 = right_arcs.begin(); e2 != right_labelled; ++e2) {
    emit(kEpsilon, e2->olabel, e2->weight, FindOrAdd(t.left, e2->nextstate, 1));
  }

  Weight final = Times(left_->Final(t.left), right_->Final(t.right));
  finals_[s] = Divide(final, here);
  stats_.arcs_created += out.size();
  arcs_[s] = std::move(out);
  expanded_[s] = 1;
  ++stats_.expanded_states;
}

Fst LazyComposeFst::Expand() {
  Fst out;
  out.SetInputSymbols(left_->InputSymbols());
  out.SetOutputSymbols(right_->OutputSymbols());
  if (Start() == kNoState) return out;
  for (StateId s = 0; s < NumKnownStates(); ++s) ExpandState(s), (void)0;
  for (StateId s = 0; s < NumKnownStates(); ++s) out.AddState();
  for (StateId s = 0; s < NumKnownStates(); ++s) {
    out.SetFinal(s, finals_[s]);
    for (const Arc &a : arcs_[s]) out.AddArc(s, a);
  }
  out.SetStart(start_);
  return out;
}

LazyComposeFst ComposeLazy(std::shared_ptr<const Fst> left, std::shared_ptr<const Fst> right,
                           ComposeFilter filter) {
  return LazyComposeFst(std::move(left), std::move(right), filter);
}

}  // namespace slu::wfst
