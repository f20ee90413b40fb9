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

#include "slu/wfst/ops.h"

#include <algorithm>
#include <deque>
#include <tuple>

#include "slu/base/errors.h"

namespace slu::wfst {
namespace {

bool ArcLess(const Arc &a, const Arc &b, SortTape tape) {
  if (tape == SortTape::kInput) {
    return std::tie(a.ilabel, a.olabel, a.nextstate) <
           std::tie(b.ilabel, b.olabel, b.nextstate);
  }
  return std::tie(a.olabel, a.ilabel, a.nextstate) <
         std::tie(b.olabel, b.ilabel, b.nextstate);
}

// Adjacency list of incoming arcs: (source state, arc index).
std::vector<std::vector<std::pair<StateId, std::size_t>>> Reverse(const Fst &fst) {
  std::vector<std::vector<std::pair<StateId, std::size_t>>> in(fst.NumStates());
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    auto arcs = fst.Arcs(s);
    for (std::size_t i = 0; i < arcs.size(); ++i) in[arcs[i].nextstate].emplace_back(s, i);
  }
  return in;
}

// Relaxes from a set of seeded states until no distance improves.
template <typename Successors>
void LabelCorrecting(std::vector<Weight> *dist, std::deque<StateId> queue,
                     Successors successors) {
  std::vector<char> queued(dist->size(), 0);
  for (StateId s : queue) queued[s] = 1;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    queued[s] = 0;
    successors(s, [&](StateId n, Weight w) {
      Weight cand = Times((*dist)[s], w);
      if (cand < (*dist)[n]) {
        (*dist)[n] = cand;
        if (!queued[n]) {
          queued[n] = 1;
          queue.push_back(n);
        }
      }
    });
  }
}

}  // namespace

Fst ArcSort(const Fst &fst, SortTape tape) {
  Fst out = fst;
  ArcSortInPlace(&out, tape);
  return out;
}

void ArcSortInPlace(Fst *fst, SortTape tape) {
  for (StateId s = 0; s < fst->NumStates(); ++s) {
    auto &arcs = fst->MutableArcs(s);
    std::stable_sort(arcs.begin(), arcs.end(),
                     [tape](const Arc &a, const Arc &b) { return ArcLess(a, b, tape); });
  }
}

bool IsArcSorted(const Fst &fst, SortTape tape) {
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    auto arcs = fst.Arcs(s);
    for (std::size_t i = 1; i < arcs.size(); ++i) {
      Label prev = tape == SortTape::kInput ? arcs[i - 1].ilabel : arcs[i - 1].olabel;
      Label cur = tape == SortTape::kInput ? arcs[i].ilabel : arcs[i].olabel;
      if (cur < prev) return false;
    }
  }
  return true;
}

Fst Connect(const Fst &fst) {
  const StateId n = fst.NumStates();
  Fst out;
  out.SetInputSymbols(fst.InputSymbols());
  out.SetOutputSymbols(fst.OutputSymbols());
  if (fst.Start() == kNoState) return out;

  std::vector<char> access(n, 0), coaccess(n, 0);
  std::vector<StateId> stack{fst.Start()};
  access[fst.Start()] = 1;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const Arc &a : fst.Arcs(s)) {
      if (!access[a.nextstate]) {
        access[a.nextstate] = 1;
        stack.push_back(a.nextstate);
      }
    }
  }
  auto in = Reverse(fst);
  for (StateId s = 0; s < n; ++s) {
    if (fst.IsFinal(s)) {
      coaccess[s] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (auto [p, i] : in[s]) {
      if (!coaccess[p]) {
        coaccess[p] = 1;
        stack.push_back(p);
      }
    }
  }
  if (!coaccess[fst.Start()]) return out;

  std::vector<StateId> remap(n, kNoState);
  for (StateId s = 0; s < n; ++s) {
    if (access[s] && coaccess[s]) remap[s] = out.AddState();
  }
  for (StateId s = 0; s < n; ++s) {
    if (remap[s] == kNoState) continue;
    out.SetFinal(remap[s], fst.Final(s));
    for (Arc a : fst.Arcs(s)) {
      if (remap[a.nextstate] == kNoState) continue;
      a.nextstate = remap[a.nextstate];
      out.AddArc(remap[s], a);
    }
  }
  out.SetStart(remap[fst.Start()]);
  return out;
}

std::vector<Weight> ShortestDistanceFromStart(const Fst &fst) {
  std::vector<Weight> dist(fst.NumStates(), Weight::Zero());
  if (fst.Start() == kNoState) return dist;
  dist[fst.Start()] = Weight::One();
  LabelCorrecting(&dist, {fst.Start()}, [&](StateId s, auto relax) {
    for (const Arc &a : fst.Arcs(s)) relax(a.nextstate, a.weight);
  });
  return dist;
}

std::vector<Weight> ShortestDistanceToFinal(const Fst &fst) {
  std::vector<Weight> dist(fst.NumStates(), Weight::Zero());
  std::deque<StateId> seeds;
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    if (fst.IsFinal(s)) {
      dist[s] = fst.Final(s);
      seeds.push_back(s);
    }
  }
  auto in = Reverse(fst);
  LabelCorrecting(&dist, std::move(seeds), [&](StateId s, auto relax) {
    for (auto [p, i] : in[s]) relax(p, fst.Arcs(p)[i].weight);
  });
  return dist;
}

Fst RmEpsilon(const Fst &fst) {
  const StateId n = fst.NumStates();
  Fst out;
  out.SetInputSymbols(fst.InputSymbols());
  out.SetOutputSymbols(fst.OutputSymbols());
  for (StateId s = 0; s < n; ++s) out.AddState();
  if (fst.Start() != kNoState) out.SetStart(fst.Start());

  std::vector<Weight> dist(n, Weight::Zero());
  std::vector<StateId> touched;
  std::vector<char> queued(n, 0);
  for (StateId s = 0; s < n; ++s) {
    // Epsilon closure of s.
    for (StateId t : touched) dist[t] = Weight::Zero();
    touched.clear();
    dist[s] = Weight::One();
    std::deque<StateId> queue{s};
    queued[s] = 1;
    touched.push_back(s);
    while (!queue.empty()) {
      StateId q = queue.front();
      queue.pop_front();
      queued[q] = 0;
      for (const Arc &a : fst.Arcs(q)) {
        if (a.ilabel != kEpsilon || a.olabel != kEpsilon) continue;
        Weight cand = Times(dist[q], a.weight);
        if (cand < dist[a.nextstate]) {
          if (dist[a.nextstate].IsZero()) touched.push_back(a.nextstate);
          dist[a.nextstate] = cand;
          if (!queued[a.nextstate]) {
            queued[a.nextstate] = 1;
            queue.push_back(a.nextstate);
          }
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    std::map<std::tuple<Label, Label, StateId>, Weight> merged;
    std::vector<std::tuple<Label, Label, StateId>> order;
    Weight final = Weight::Zero();
    for (StateId q : touched) {
      final = Plus(final, Times(dist[q], fst.Final(q)));
      for (const Arc &a : fst.Arcs(q)) {
        if (a.ilabel == kEpsilon && a.olabel == kEpsilon) continue;
        auto key = std::make_tuple(a.ilabel, a.olabel, a.nextstate);
        Weight w = Times(dist[q], a.weight);
        auto [it, inserted] = merged.emplace(key, w);
        if (inserted) {
          order.push_back(key);
        } else {
          it->second = Plus(it->second, w);
        }
      }
    }
    out.SetFinal(s, final);
    for (const auto &key : order) {
      out.AddArc(s, Arc{std::get<0>(key), std::get<1>(key), merged[key], std::get<2>(key)});
    }
  }
  return Connect(out);
}

Fst Push(const Fst &fst, PushMode mode) {
  if (mode == PushMode::kWeights) {
    Fst out = Connect(fst);
    if (out.Start() == kNoState) return out;
    std::vector<Weight> potential = ShortestDistanceToFinal(out);
    potential[out.Start()] = Weight::One();
    for (StateId s = 0; s < out.NumStates(); ++s) {
      for (Arc &a : out.MutableArcs(s)) {
        a.weight = Divide(Times(a.weight, potential[a.nextstate]), potential[s]);
      }
      if (out.IsFinal(s)) out.SetFinal(s, Divide(out.Final(s), potential[s]));
    }
    return out;
  }

  Fst out = fst;
  const StateId n = out.NumStates();
  // States on a cycle are excluded so labels cannot circulate forever.
  std::vector<char> cyclic(n, 0);
  {
    // Tarjan's SCC, iterative.
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<StateId> stack;
    int counter = 0;
    for (StateId root = 0; root < n; ++root) {
      if (index[root] != -1) continue;
      std::vector<std::pair<StateId, std::size_t>> call{{root, 0}};
      index[root] = low[root] = counter++;
      stack.push_back(root);
      on_stack[root] = 1;
      while (!call.empty()) {
        auto &[s, i] = call.back();
        auto arcs = out.Arcs(s);
        if (i < arcs.size()) {
          StateId t = arcs[i++].nextstate;
          if (t == s) cyclic[s] = 1;
          if (index[t] == -1) {
            index[t] = low[t] = counter++;
            stack.push_back(t);
            on_stack[t] = 1;
            call.emplace_back(t, 0);
          } else if (on_stack[t]) {
            low[s] = std::min(low[s], index[t]);
          }
        } else {
          StateId done = s;
          call.pop_back();
          if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
          if (low[done] == index[done]) {
            std::vector<StateId> component;
            StateId t;
            do {
              t = stack.back();
              stack.pop_back();
              on_stack[t] = 0;
              component.push_back(t);
            } while (t != done);
            if (component.size() > 1) {
              for (StateId c : component) cyclic[c] = 1;
            }
          }
        }
      }
    }
  }

  bool changed = true;
  while (changed) {
    changed = false;
    auto in = Reverse(out);
    for (StateId s = 0; s < n; ++s) {
      if (s == out.Start() || cyclic[s] || out.IsFinal(s) || in[s].empty()) continue;
      auto arcs = out.Arcs(s);
      if (arcs.empty() || arcs.front().olabel == kEpsilon) continue;
      Label label = arcs.front().olabel;
      bool uniform = std::all_of(arcs.begin(), arcs.end(),
                                 [label](const Arc &a) { return a.olabel == label; });
      bool free_in = std::all_of(in[s].begin(), in[s].end(), [&](auto e) {
        return out.Arcs(e.first)[e.second].olabel == kEpsilon;
      });
      if (!uniform || !free_in) continue;
      for (Arc &a : out.MutableArcs(s)) a.olabel = kEpsilon;
      for (auto [p, i] : in[s]) out.MutableArcs(p)[i].olabel = label;
      changed = true;
    }
  }
  return out;
}

Fst ExpandLabels(const Fst &fst, const std::map<Label, std::vector<Label>> &expansion) {
  Fst out = fst;
  for (StateId s = 0; s < out.NumStates(); ++s) {
    std::vector<Arc> arcs;
    arcs.reserve(out.NumArcs(s));
    for (const Arc &a : fst.Arcs(s)) {
      auto it = expansion.find(a.ilabel);
      if (it == expansion.end() || a.ilabel != a.olabel) {
        arcs.push_back(a);
        continue;
      }
      for (Label l : it->second) arcs.push_back(Arc{l, l, a.weight, a.nextstate});
    }
    out.MutableArcs(s) = std::move(arcs);
  }
  return out;
}

Fst RemoveArcsWithLabels(const Fst &fst, const std::set<Label> &labels) {
  Fst out = fst;
  for (StateId s = 0; s < out.NumStates(); ++s) {
    auto &arcs = out.MutableArcs(s);
    std::erase_if(arcs, [&](const Arc &a) { return labels.count(a.ilabel) > 0; });
  }
  return out;
}

}  // namespace slu::wfst
