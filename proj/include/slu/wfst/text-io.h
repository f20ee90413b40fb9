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

#ifndef SLU_WFST_TEXT_IO_H_
#define SLU_WFST_TEXT_IO_H_

#include <istream>
#include <ostream>

#include "slu/wfst/fst.h"

namespace slu::wfst {

// AT&T text format. Arc lines "src dst ilabel olabel [weight]", final lines
// "state [weight]". The source of the first line is the start state. Labels
// are symbols when tables are given, integers otherwise; the tables are
// attached to the result.
Fst ReadAtt(std::istream &in, std::shared_ptr<const SymbolTable> isyms = nullptr,
            std::shared_ptr<const SymbolTable> osyms = nullptr);

// Reads an acceptor-style symbolic machine, adding unseen symbols to `syms`,
// which is attached to both tapes.
Fst ReadAttAddingSymbols(std::istream &in, std::shared_ptr<SymbolTable> syms);

// Writes symbols when the machine has tables attached and `use_symbols` is set.
void WriteAtt(const Fst &fst, std::ostream &out, bool use_symbols = true);

}  // namespace slu::wfst

#endif  // SLU_WFST_TEXT_IO_H_
