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

#ifndef SLU_WFST_SHORTEST_PATH_H_
#define SLU_WFST_SHORTEST_PATH_H_

#include <cstddef>
#include <vector>

#include "slu/wfst/fst.h"
#include "slu/wfst/lazy-compose.h"

namespace slu::wfst {

struct Path {
  std::vector<Label> ilabels;  // epsilons removed
  std::vector<Label> olabels;  // epsilons removed
  Weight weight;
};

// The n cheapest accepting paths in ascending weight. Paths with equal weight
// (within 1e-9) are ordered by their output label sequence. Distinct paths may
// carry the same label strings. Requires no negative-weight cycles.
std::vector<Path> ShortestPath(const Fst &fst, std::size_t n = 1);

// Expands the whole composition first.
std::vector<Path> ShortestPath(LazyComposeFst &fst, std::size_t n = 1);

}  // namespace slu::wfst

#endif  // SLU_WFST_SHORTEST_PATH_H_
