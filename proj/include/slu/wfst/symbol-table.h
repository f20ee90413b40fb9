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

#ifndef SLU_WFST_SYMBOL_TABLE_H_
#define SLU_WFST_SYMBOL_TABLE_H_

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "slu/wfst/weight.h"

namespace slu::wfst {

inline constexpr std::string_view kEpsilonSymbol = "<eps>";

// Dense bijection between strings and labels. Label 0 is always "<eps>".
class SymbolTable {
 public:
  SymbolTable();

  // Returns the existing label when the symbol is already present.
  Label AddSymbol(std::string_view symbol);

  // kNoLabel when absent.
  Label Find(std::string_view symbol) const;
  const std::string &Symbol(Label label) const;
  bool Contains(std::string_view symbol) const { return Find(symbol) != kNoLabel; }

  Label Size() const { return static_cast<Label>(symbols_.size()); }
  const std::vector<std::string> &Symbols() const { return symbols_; }

  // "symbol id" per line. Ids must be dense, starting at 0 with <eps>.
  static SymbolTable ReadText(std::istream &in);
  void WriteText(std::ostream &out) const;

  friend bool operator==(const SymbolTable &a, const SymbolTable &b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Label> index_;
};

}  // namespace slu::wfst

#endif  // SLU_WFST_SYMBOL_TABLE_H_
