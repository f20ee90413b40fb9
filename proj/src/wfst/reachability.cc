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

#include "slu/wfst/reachability.h"

#include <algorithm>
#include <deque>

#include "slu/wfst/ops.h"

namespace slu::wfst {

IntervalSet IntervalSet::FromLabels(std::vector<Label> labels) {
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  IntervalSet set;
  for (Label l : labels) {
    if (!set.intervals_.empty() && set.intervals_.back().second == l) {
      ++set.intervals_.back().second;
    } else {
      set.intervals_.emplace_back(l, l + 1);
    }
  }
  return set;
}

bool IntervalSet::Contains(Label label) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), label,
                             [](Label l, const auto &iv) { return l < iv.first; });
  if (it == intervals_.begin()) return false;
  --it;
  return label < it->second;
}

bool IntervalSet::Intersects(const IntervalSet &other) const {
  auto a = intervals_.begin();
  auto b = other.intervals_.begin();
  while (a != intervals_.end() && b != other.intervals_.end()) {
    if (a->second <= b->first) {
      ++a;
    } else if (b->second <= a->first) {
      ++b;
    } else {
      return true;
    }
  }
  return false;
}

ReachabilityIndex ReachabilityIndex::Build(const Fst &fst, SortTape tape) {
  const StateId n = fst.NumStates();
  auto label_of = [tape](const Arc &a) {
    return tape == SortTape::kInput ? a.ilabel : a.olabel;
  };
  ReachabilityIndex index;
  index.tape_ = tape;
  index.direct_.resize(n);
  index.frontier_.resize(n);
  index.final_cost_.assign(n, Weight::Zero());
  index.min_arc_cost_.assign(n, Weight::Zero());

  std::vector<Weight> own_min(n, Weight::Zero());
  for (StateId s = 0; s < n; ++s) {
    std::vector<Label> labels;
    for (const Arc &a : fst.Arcs(s)) {
      if (label_of(a) == kEpsilon) continue;
      labels.push_back(label_of(a));
      own_min[s] = Plus(own_min[s], a.weight);
    }
    index.direct_[s] = IntervalSet::FromLabels(std::move(labels));
  }

  std::vector<Weight> dist(n, Weight::Zero());
  std::vector<char> queued(n, 0);
  std::vector<StateId> touched;
  for (StateId s = 0; s < n; ++s) {
    for (StateId t : touched) dist[t] = Weight::Zero();
    touched.clear();
    dist[s] = Weight::One();
    touched.push_back(s);
    std::deque<StateId> queue{s};
    queued[s] = 1;
    while (!queue.empty()) {
      StateId q = queue.front();
      queue.pop_front();
      queued[q] = 0;
      for (const Arc &a : fst.Arcs(q)) {
        if (label_of(a) != kEpsilon) continue;
        Weight cand = Times(dist[q], a.weight);
        if (cand < dist[a.nextstate]) {
          if (dist[a.nextstate].IsZero() && a.nextstate != s) touched.push_back(a.nextstate);
          dist[a.nextstate] = cand;
          if (!queued[a.nextstate]) {
            queued[a.nextstate] = 1;
            queue.push_back(a.nextstate);
          }
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    for (StateId q : touched) {
      if (!index.direct_[q].Empty()) index.frontier_[s].push_back(q);
      index.final_cost_[s] = Plus(index.final_cost_[s], Times(dist[q], fst.Final(q)));
      index.min_arc_cost_[s] = Plus(index.min_arc_cost_[s], Times(dist[q], own_min[q]));
    }
  }
  return index;
}

bool ReachabilityIndex::Reachable(StateId q, Label label) const {
  for (StateId f : frontier_[q]) {
    if (direct_[f].Contains(label)) return true;
  }
  return false;
}

bool ReachabilityIndex::Intersects(StateId q, const ReachabilityIndex &other, StateId r,
                                   bool direct_only) const {
  auto check = [&](const IntervalSet &mine) {
    for (StateId g : other.frontier_[r]) {
      if (mine.Intersects(other.direct_[g])) return true;
    }
    return false;
  };
  if (direct_only) return !direct_[q].Empty() && check(direct_[q]);
  for (StateId f : frontier_[q]) {
    if (check(direct_[f])) return true;
  }
  return false;
}

}  // namespace slu::wfst
