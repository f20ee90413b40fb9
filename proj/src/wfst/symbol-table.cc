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

#include "slu/wfst/symbol-table.h"

#include <sstream>

#include "slu/base/errors.h"

namespace slu::wfst {

SymbolTable::SymbolTable() { AddSymbol(kEpsilonSymbol); }

Label SymbolTable::AddSymbol(std::string_view symbol) {
  std::string key(symbol);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  Label label = static_cast<Label>(symbols_.size());
  symbols_.push_back(key);
  index_.emplace(std::move(key), label);
  return label;
}

Label SymbolTable::Find(std::string_view symbol) const {
  auto it = index_.find(std::string(symbol));
  return it == index_.end() ? kNoLabel : it->second;
}

const std::string &SymbolTable::Symbol(Label label) const {
  if (label < 0 || label >= Size()) {
    throw AlphabetError("label " + std::to_string(label) +
                        " not in symbol table");
  }
  return symbols_[label];
}

SymbolTable SymbolTable::ReadText(std::istream &in) {
  SymbolTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string symbol;
    long long id = -1;
    if (!(fields >> symbol >> id)) throw ParseError("expected 'symbol id'", lineno);
    if (id == 0) {
      if (symbol != kEpsilonSymbol) throw ParseError("id 0 must be <eps>", lineno);
      continue;
    }
    if (id != table.Size() || table.Contains(symbol)) {
      throw ParseError("symbol ids must be dense and unique", lineno);
    }
    table.AddSymbol(symbol);
  }
  return table;
}

void SymbolTable::WriteText(std::ostream &out) const {
  for (Label i = 0; i < Size(); ++i) out << symbols_[i] << ' ' << i << '\n';
}

}  // namespace slu::wfst
