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

#include "slu/wfst/text-io.h"

#include <charconv>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "slu/base/errors.h"

namespace slu::wfst {
namespace {

StateId ParseState(const std::string &field, std::size_t line) {
  StateId s = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), s);
  if (ec != std::errc() || ptr != field.data() + field.size() || s < 0) {
    throw ParseError("bad state id '" + field + "'", line);
  }
  return s;
}

Label ParseLabel(const std::string &field, const SymbolTable *syms, std::size_t line,
                 SymbolTable *growing = nullptr) {
  if (growing) return growing->AddSymbol(field);
  if (syms) {
    Label l = syms->Find(field);
    if (l == kNoLabel) throw ParseError("unknown symbol '" + field + "'", line);
    return l;
  }
  Label l = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), l);
  if (ec != std::errc() || ptr != field.data() + field.size() || l < 0) {
    throw ParseError("bad label '" + field + "'", line);
  }
  return l;
}

Weight ParseWeight(const std::string &field, std::size_t line) {
  if (field == "Infinity" || field == "inf") return Weight::Zero();
  try {
    std::size_t used = 0;
    double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return Weight(v);
  } catch (const std::exception &) {
    throw ParseError("bad weight '" + field + "'", line);
  }
}

Fst ReadAttImpl(std::istream &in, std::shared_ptr<const SymbolTable> isyms,
                std::shared_ptr<const SymbolTable> osyms, SymbolTable *growing) {
  struct ArcLine {
    StateId src;
    Arc arc;
  };
  std::vector<ArcLine> arcs;
  std::vector<std::pair<StateId, Weight>> finals;
  StateId start = kNoState;
  StateId max_state = -1;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::istringstream fields(text);
    std::vector<std::string> f;
    for (std::string x; fields >> x;) f.push_back(x);
    if (f.empty()) continue;
    StateId src = ParseState(f[0], line);
    if (start == kNoState) start = src;
    max_state = std::max(max_state, src);
    if (f.size() <= 2) {
      finals.emplace_back(src, f.size() == 2 ? ParseWeight(f[1], line) : Weight::One());
    } else if (f.size() == 4 || f.size() == 5) {
      Arc a;
      a.nextstate = ParseState(f[1], line);
      a.ilabel = ParseLabel(f[2], isyms.get(), line, growing);
      a.olabel = ParseLabel(f[3], osyms.get(), line, growing);
      a.weight = f.size() == 5 ? ParseWeight(f[4], line) : Weight::One();
      max_state = std::max(max_state, a.nextstate);
      arcs.push_back({src, a});
    } else {
      throw ParseError("expected 1, 2, 4 or 5 fields", line);
    }
  }
  Fst fst;
  fst.SetInputSymbols(std::move(isyms));
  fst.SetOutputSymbols(std::move(osyms));
  for (StateId s = 0; s <= max_state; ++s) fst.AddState();
  for (const auto &a : arcs) fst.AddArc(a.src, a.arc);
  for (const auto &[s, w] : finals) fst.SetFinal(s, w);
  if (start != kNoState) fst.SetStart(start);
  return fst;
}

}  // namespace

Fst ReadAtt(std::istream &in, std::shared_ptr<const SymbolTable> isyms,
            std::shared_ptr<const SymbolTable> osyms) {
  return ReadAttImpl(in, std::move(isyms), std::move(osyms), nullptr);
}

Fst ReadAttAddingSymbols(std::istream &in, std::shared_ptr<SymbolTable> syms) {
  Fst fst = ReadAttImpl(in, nullptr, nullptr, syms.get());
  fst.SetInputSymbols(syms);
  fst.SetOutputSymbols(syms);
  return fst;
}

void WriteAtt(const Fst &fst, std::ostream &out, bool use_symbols) {
  if (fst.Start() == kNoState) return;
  const SymbolTable *is = use_symbols ? fst.InputSymbols().get() : nullptr;
  const SymbolTable *os = use_symbols ? fst.OutputSymbols().get() : nullptr;
  auto label = [](const SymbolTable *t, Label l) {
    return t ? t->Symbol(l) : std::to_string(l);
  };
  auto weight = [](Weight w) {
    std::ostringstream s;
    s << std::setprecision(17) << w.Value();
    return s.str();
  };
  // The start state's lines go first so the reader recovers it.
  std::vector<StateId> order{fst.Start()};
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    if (s != fst.Start()) order.push_back(s);
  }
  bool wrote_start = false;
  for (StateId s : order) {
    for (const Arc &a : fst.Arcs(s)) {
      out << s << '\t' << a.nextstate << '\t' << label(is, a.ilabel) << '\t'
          << label(os, a.olabel);
      if (a.weight != Weight::One()) out << '\t' << weight(a.weight);
      out << '\n';
      wrote_start = true;
    }
    if (fst.IsFinal(s)) {
      out << s;
      if (fst.Final(s) != Weight::One()) out << '\t' << weight(fst.Final(s));
      out << '\n';
      wrote_start = true;
    }
    if (s == fst.Start() && !wrote_start) {
      // A start state with neither arcs nor final weight: an unreachable
      // final line would change the language, so the machine is empty.
      return;
    }
  }
}

}  // namespace slu::wfst
