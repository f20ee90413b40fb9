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

#include "slu/wfst/shortest-path.h"

#include <algorithm>
#include <cmath>
#include <queue>

#include "slu/base/errors.h"
#include "slu/wfst/ops.h"

namespace slu::wfst {
namespace {

struct Node {
  std::int64_t parent;
  Label ilabel;
  Label olabel;
};

struct Entry {
  double priority;
  std::uint64_t seq;
  StateId state;  // kNoState marks a completed path
  double cost;
  std::int64_t node;

  bool operator>(const Entry &o) const {
    if (priority != o.priority) return priority > o.priority;
    return seq > o.seq;
  }
};

bool PathLess(const Path &a, const Path &b) {
  if (std::fabs(a.weight.Value() - b.weight.Value()) > 1e-9) return a.weight < b.weight;
  return a.olabels < b.olabels;
}

}  // namespace

std::vector<Path> ShortestPath(const Fst &fst, std::size_t n) {
  if (n == 0) throw ParameterError("shortest path: n must be at least 1");
  std::vector<Path> result;
  if (fst.Start() == kNoState) return result;
  const std::vector<Weight> to_final = ShortestDistanceToFinal(fst);
  if (to_final[fst.Start()].IsZero()) return result;

  std::vector<Node> nodes;
  std::vector<std::size_t> pops(fst.NumStates(), 0);
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::uint64_t seq = 0;
  heap.push({to_final[fst.Start()].Value(), seq++, fst.Start(), 0.0, -1});

  while (!heap.empty()) {
    Entry e = heap.top();
    heap.pop();
    if (e.state == kNoState) {
      if (result.size() >= n && e.priority > result[n - 1].weight.Value() + 1e-9) break;
      Path p;
      for (std::int64_t k = e.node; k >= 0; k = nodes[k].parent) {
        if (nodes[k].ilabel != kEpsilon) p.ilabels.push_back(nodes[k].ilabel);
        if (nodes[k].olabel != kEpsilon) p.olabels.push_back(nodes[k].olabel);
      }
      std::reverse(p.ilabels.begin(), p.ilabels.end());
      std::reverse(p.olabels.begin(), p.olabels.end());
      p.weight = Weight(e.cost);
      result.push_back(std::move(p));
      std::sort(result.begin(), result.end(), PathLess);
      continue;
    }
    if (pops[e.state] >= n) continue;
    ++pops[e.state];
    if (fst.IsFinal(e.state)) {
      double cost = e.cost + fst.Final(e.state).Value();
      heap.push({cost, seq++, kNoState, cost, e.node});
    }
    for (const Arc &a : fst.Arcs(e.state)) {
      if (to_final[a.nextstate].IsZero() || a.weight.IsZero()) continue;
      nodes.push_back({e.node, a.ilabel, a.olabel});
      double cost = e.cost + a.weight.Value();
      heap.push({cost + to_final[a.nextstate].Value(), seq++, a.nextstate, cost,
                 static_cast<std::int64_t>(nodes.size() - 1)});
    }
  }
  if (result.size() > n) result.resize(n);
  return result;
}

std::vector<Path> ShortestPath(LazyComposeFst &fst, std::size_t n) {
  return ShortestPath(fst.Expand(), n);
}

}  // namespace slu::wfst
