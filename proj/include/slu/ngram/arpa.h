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

#ifndef SLU_NGRAM_ARPA_H_
#define SLU_NGRAM_ARPA_H_

#include <istream>
#include <ostream>

#include "slu/ngram/ngram.h"

namespace slu::ngram {

// ARPA back-off format with base-10 logarithms. Zero probabilities (the <s>
// unigram) are written as -99 and read back as zero.
void WriteArpa(const NGramModel &model, std::ostream &out);
NGramModel ReadArpa(std::istream &in);

}  // namespace slu::ngram

#endif  // SLU_NGRAM_ARPA_H_
