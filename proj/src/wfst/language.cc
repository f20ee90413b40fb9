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

#include "slu/wfst/language.h"

#include <cstdint>
#include <deque>
#include <unordered_map>
#include <sstream>

namespace slu::wfst {
namespace {

std::string Render(const LabelString &s) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
  out << ']';
  return out.str();
}

}  // namespace

Language WeightedLanguage(const Fst &fst, std::size_t max_len) {
  Language lang;
  if (fst.Start() == kNoState) return lang;
  // Strings on each tape are trie nodes; a configuration is
  // (state, input node, output node).
  struct Trie {
    std::vector<std::int32_t> parent{-1};
    std::vector<Label> label{kEpsilon};
    std::vector<std::uint32_t> depth{0};
    std::unordered_map<std::uint64_t, std::int32_t> child;
    std::int32_t Extend(std::int32_t node, Label l) {
      if (l == kEpsilon) return node;
      std::uint64_t key = (static_cast<std::uint64_t>(node) << 32) | static_cast<std::uint32_t>(l);
      auto [it, inserted] = child.emplace(key, static_cast<std::int32_t>(parent.size()));
      if (inserted) {
        parent.push_back(node);
        label.push_back(l);
        depth.push_back(depth[node] + 1);
      }
      return it->second;
    }
    LabelString String(std::int32_t node) const {
      LabelString s;
      for (; node > 0; node = parent[node]) s.push_back(label[node]);
      return LabelString(s.rbegin(), s.rend());
    }
  };
  struct Key {
    StateId s;
    std::int32_t in, out;
    bool operator==(const Key &) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key &k) const {
      std::size_t h = static_cast<std::size_t>(k.s) * 0x9E3779B97F4A7C15ULL;
      h ^= static_cast<std::size_t>(k.in) + 0x7F4A7C15ULL + (h << 6) + (h >> 2);
      h ^= static_cast<std::size_t>(k.out) + (h << 6) + (h >> 2);
      return h;
    }
  };
  Trie in_trie, out_trie;
  std::unordered_map<Key, std::pair<Weight, bool>, KeyHash> dist;  // weight, queued
  std::deque<Key> queue;
  Key start{fst.Start(), 0, 0};
  dist[start] = {Weight::One(), true};
  queue.push_back(start);
  while (!queue.empty()) {
    Key c = queue.front();
    queue.pop_front();
    auto &entry = dist[c];
    entry.second = false;
    const Weight d = entry.first;
    for (const Arc &a : fst.Arcs(c.s)) {
      if (a.weight.IsZero()) continue;
      if (a.ilabel != kEpsilon && in_trie.depth[c.in] >= max_len) continue;
      if (a.olabel != kEpsilon && out_trie.depth[c.out] >= max_len) continue;
      Key next{a.nextstate, in_trie.Extend(c.in, a.ilabel), out_trie.Extend(c.out, a.olabel)};
      Weight cand = Times(d, a.weight);
      auto [it, inserted] = dist.try_emplace(next, Weight::Zero(), false);
      if (!(cand < it->second.first)) continue;
      it->second.first = cand;
      if (!it->second.second) {
        it->second.second = true;
        queue.push_back(next);
      }
    }
  }
  for (const auto &[c, entry] : dist) {
    if (!fst.IsFinal(c.s)) continue;
    Weight w = Times(entry.first, fst.Final(c.s));
    auto key = StringPair{in_trie.String(c.in), out_trie.String(c.out)};
    auto it = lang.find(key);
    if (it == lang.end()) {
      lang.emplace(std::move(key), w);
    } else {
      it->second = Plus(it->second, w);
    }
  }
  return lang;
}

std::map<LabelString, Weight> AcceptorLanguage(const Fst &fst, std::size_t max_len) {
  std::map<LabelString, Weight> out;
  for (const auto &[pair, w] : WeightedLanguage(fst, max_len)) {
    auto it = out.find(pair.first);
    if (it == out.end()) {
      out.emplace(pair.first, w);
    } else {
      it->second = Plus(it->second, w);
    }
  }
  return out;
}

std::string LanguageDiff(const Language &a, const Language &b, double delta) {
  for (const auto &[k, w] : a) {
    auto it = b.find(k);
    if (it == b.end()) {
      return Render(k.first) + ":" + Render(k.second) + " only in first (" +
             std::to_string(w.Value()) + ")";
    }
    if (!ApproxEqual(w, it->second, delta)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << Render(k.first) << ":" << Render(k.second) << " weights " << w.Value()
          << " vs " << it->second.Value();
      return msg.str();
    }
  }
  for (const auto &[k, w] : b) {
    if (!a.count(k)) {
      return Render(k.first) + ":" + Render(k.second) + " only in second (" +
             std::to_string(w.Value()) + ")";
    }
  }
  return {};
}

}  // namespace slu::wfst
