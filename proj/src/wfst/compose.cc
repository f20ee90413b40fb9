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

#include "slu/wfst/compose.h"

#include <algorithm>
#include <array>
#include <deque>
#include <unordered_map>

#include "slu/base/errors.h"
#include "slu/wfst/ops.h"

namespace slu::wfst {
namespace {

struct TupleHash {
  std::size_t operator()(const std::array<StateId, 3> &t) const {
    std::size_t h = static_cast<std::size_t>(t[0]) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::size_t>(t[1]) + 0x7F4A7C15ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(t[2]) + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace

void CheckComposeAlphabets(const Fst &a, const Fst &b) {
  const auto &left = a.OutputSymbols();
  const auto &right = b.InputSymbols();
  if (left && right && left != right && !(*left == *right)) {
    throw AlphabetError("output symbols of the left machine differ from input "
                        "symbols of the right machine");
  }
}

Fst ComposeStatic(const Fst &a, const Fst &b, const ComposeOptions &options) {
  CheckComposeAlphabets(a, b);
  Fst out;
  out.SetInputSymbols(a.InputSymbols());
  out.SetOutputSymbols(b.OutputSymbols());
  if (a.Start() == kNoState || b.Start() == kNoState) return out;

  const Fst right = IsArcSorted(b, SortTape::kInput) ? b : ArcSort(b, SortTape::kInput);

  std::unordered_map<std::array<StateId, 3>, StateId, TupleHash> ids;
  std::deque<std::array<StateId, 3>> queue;
  auto find_or_add = [&](StateId s1, StateId s2, StateId filter) {
    std::array<StateId, 3> key{s1, s2, filter};
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    StateId id = out.AddState();
    ids.emplace(key, id);
    queue.push_back(key);
    return id;
  };

  out.SetStart(find_or_add(a.Start(), b.Start(), 0));
  while (!queue.empty()) {
    auto [s1, s2, filter] = queue.front();
    queue.pop_front();
    StateId id = ids.at({s1, s2, filter});
    out.SetFinal(id, Times(a.Final(s1), right.Final(s2)));

    auto right_arcs = right.Arcs(s2);
    for (const Arc &e1 : a.Arcs(s1)) {
      if (e1.olabel == kEpsilon) {
        if (filter != 0) continue;
        StateId next = find_or_add(e1.nextstate, s2, 0);
        out.AddArc(id, Arc{e1.ilabel, kEpsilon, e1.weight, next});
        continue;
      }
      auto range = std::equal_range(
          right_arcs.begin(), right_arcs.end(), e1.olabel,
          [](const auto &x, const auto &y) {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Arc>) {
              return x.ilabel < y;
            } else {
              return x < y.ilabel;
            }
          });
      for (auto it = range.first; it != range.second; ++it) {
        StateId next = find_or_add(e1.nextstate, it->nextstate, 0);
        out.AddArc(id, Arc{e1.ilabel, it->olabel, Times(e1.weight, it->weight), next});
      }
    }
    for (const Arc &e2 : right_arcs) {
      if (e2.ilabel != kEpsilon) break;
      StateId next = find_or_add(s1, e2.nextstate, 1);
      out.AddArc(id, Arc{kEpsilon, e2.olabel, e2.weight, next});
    }
  }
  return options.connect ? Connect(out) : out;
}

}  // namespace slu::wfst
