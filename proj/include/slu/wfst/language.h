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

#ifndef SLU_WFST_LANGUAGE_H_
#define SLU_WFST_LANGUAGE_H_

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "slu/wfst/fst.h"

namespace slu::wfst {

using LabelString = std::vector<Label>;
using StringPair = std::pair<LabelString, LabelString>;
using Language = std::map<StringPair, Weight>;

// Every accepted (input, output) string pair with both sides of length at
// most max_len, mapped to the minimum over its accepting paths. Paths that
// exceed the bound on either tape are cut, so cycles are fine as long as no
// cycle is epsilon on both tapes with negative weight.
Language WeightedLanguage(const Fst &fst, std::size_t max_len);

// Input side only; acceptor languages keyed by a single string.
std::map<LabelString, Weight> AcceptorLanguage(const Fst &fst, std::size_t max_len);

// Empty string when equal; otherwise a description of the first difference.
std::string LanguageDiff(const Language &a, const Language &b, double delta = 1e-9);

}  // namespace slu::wfst

#endif  // SLU_WFST_LANGUAGE_H_
