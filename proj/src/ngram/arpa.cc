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

#include "slu/ngram/arpa.h"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "slu/base/errors.h"

namespace slu::ngram {
namespace {

constexpr double kZeroLog10 = -99.0;

std::string FormatLog10(double ln) {
  std::ostringstream s;
  if (std::isinf(ln) && ln < 0) {
    s << kZeroLog10;
  } else {
    s << std::setprecision(12) << ln / std::numbers::ln10;
  }
  return s.str();
}

double ParseLog10(const std::string &field, std::size_t line) {
  try {
    std::size_t used = 0;
    double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    if (v <= kZeroLog10) return -std::numeric_limits<double>::infinity();
    return v * std::numbers::ln10;
  } catch (const std::exception &) {
    throw ParseError("bad log probability '" + field + "'", line);
  }
}

std::string Trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void WriteArpa(const NGramModel &model, std::ostream &out) {
  out << "\n\\data\\\n";
  for (int k = 1; k <= model.Order(); ++k) {
    out << "ngram " << k << "=" << model.Grams(k).size() << "\n";
  }
  for (int k = 1; k <= model.Order(); ++k) {
    out << "\n\\" << k << "-grams:\n";
    for (const auto &[gram, e] : model.Grams(k)) {
      out << FormatLog10(e.logprob) << '\t';
      for (std::size_t i = 0; i < gram.size(); ++i) out << (i ? " " : "") << gram[i];
      if (e.has_backoff) out << '\t' << FormatLog10(e.backoff);
      out << '\n';
    }
  }
  out << "\n\\end\\\n";
}

NGramModel ReadArpa(std::istream &in) {
  std::string text;
  std::size_t line = 0;
  auto next = [&]() -> bool {
    while (std::getline(in, text)) {
      ++line;
      text = Trim(text);
      if (!text.empty()) return true;
    }
    return false;
  };

  if (!next() || text != "\\data\\") throw ParseError("expected \\data\\", line);
  std::vector<std::size_t> declared;
  while (next() && text.rfind("ngram ", 0) == 0) {
    auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError("malformed count line", line);
    int k = 0;
    std::size_t n = 0;
    try {
      k = std::stoi(text.substr(6, eq - 6));
      n = std::stoul(text.substr(eq + 1));
    } catch (const std::exception &) {
      throw ParseError("malformed count line", line);
    }
    if (k != static_cast<int>(declared.size()) + 1) {
      throw ParseError("n-gram orders must be declared in sequence", line);
    }
    if (n == 0) throw ParseError("zero count for order " + std::to_string(k), line);
    declared.push_back(n);
  }
  if (declared.empty()) throw ParseError("no n-gram counts declared", line);

  NGramModel model(static_cast<int>(declared.size()));
  for (int k = 1; k <= model.Order(); ++k) {
    std::string header = "\\" + std::to_string(k) + "-grams:";
    if (text != header) throw ParseError("expected " + header, line);
    auto &table = model.MutableGrams(k);
    while (next() && text[0] != '\\') {
      std::istringstream fields(text);
      std::vector<std::string> f;
      for (std::string x; fields >> x;) f.push_back(x);
      if (f.size() != static_cast<std::size_t>(k) + 1 &&
          f.size() != static_cast<std::size_t>(k) + 2) {
        throw ParseError("expected " + std::to_string(k) + " tokens", line);
      }
      NGramEntry e;
      e.logprob = ParseLog10(f[0], line);
      Tokens gram(f.begin() + 1, f.begin() + 1 + k);
      if (f.size() == static_cast<std::size_t>(k) + 2) {
        e.backoff = ParseLog10(f.back(), line);
        e.has_backoff = true;
      }
      if (!table.emplace(gram, e).second) throw ParseError("duplicate n-gram", line);
    }
    if (table.size() != declared[k - 1]) {
      throw ParseError("section " + header + " has " + std::to_string(table.size()) +
                           " entries, header declares " + std::to_string(declared[k - 1]),
                       line);
    }
  }
  if (text != "\\end\\") throw ParseError("expected \\end\\", line);
  return model;
}

}  // namespace slu::ngram
