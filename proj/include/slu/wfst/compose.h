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

#ifndef SLU_WFST_COMPOSE_H_
#define SLU_WFST_COMPOSE_H_

#include "slu/wfst/fst.h"

namespace slu::wfst {

// Throws AlphabetError when both tables are present and differ.
void CheckComposeAlphabets(const Fst &a, const Fst &b);

struct ComposeOptions {
  // Trim states that cannot reach a final state.
  bool connect = true;
};

// Eager composition a o b with the epsilon-sequencing filter: inside each
// gap between matched labels, output-epsilon moves of `a` come before
// input-epsilon moves of `b`, so every alignment is produced exactly once.
Fst ComposeStatic(const Fst &a, const Fst &b, const ComposeOptions &options = {});

}  // namespace slu::wfst

#endif  // SLU_WFST_COMPOSE_H_
