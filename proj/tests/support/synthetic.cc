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

#include "support/synthetic.h"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include <json.hpp>

namespace slu::testing {

std::vector<std::string> PronounceableNames(std::size_t n, std::uint64_t seed) {
  static const char *kOnsets[] = {"b", "d", "f", "g", "k", "l", "m", "n", "p", "r",
                                  "s", "t", "v", "z", "br", "tr", "st", "gl", "sh", "ch"};
  static const char *kVowels[] = {"a", "e", "i", "o", "u", "ai", "ou", "ee"};
  static const char *kCodas[] = {"", "", "", "n", "r", "s", "l", "x"};
  std::mt19937_64 rng(seed);
  auto pick = [&](auto &arr) {
    return std::string(arr[std::uniform_int_distribution<std::size_t>(
        0, std::size(arr) - 1)(rng)]);
  };
  auto word = [&]() {
    int syllables = std::uniform_int_distribution<int>(2, 3)(rng);
    std::string w;
    for (int i = 0; i < syllables; ++i) w += pick(kOnsets) + pick(kVowels);
    return w + pick(kCodas);
  };
  std::set<std::string> seen;
  std::vector<std::string> out;
  while (out.size() < n) {
    std::string name = word();
    if (std::bernoulli_distribution(0.6)(rng)) name += " " + word();
    if (seen.insert(name).second) out.push_back(name);
  }
  return out;
}

std::string MusicDatasetJson(std::size_t artists, std::uint64_t seed,
                             std::size_t play_utterances) {
  auto names = PronounceableNames(artists, seed);
  std::mt19937_64 rng(seed + 1);
  static const char *kPlay[] = {"play some music by ({})[artist]", "play ({})[artist]",
                                "i want to hear ({})[artist]", "put on something by ({})[artist]",
                                "play songs by ({})[artist] please"};
  nlohmann::json doc;
  doc["language"] = "en";
  std::vector<std::string> play;
  for (std::size_t i = 0; i < play_utterances; ++i) {
    std::string t = kPlay[i % std::size(kPlay)];
    const auto &name = names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)];
    t.replace(t.find("{}"), 2, name);
    play.push_back(t);
  }
  doc["intents"]["playMusic"]["utterances"] = play;
  doc["intents"]["volumeUp"]["utterances"] = {"turn it up", "louder please",
                                              "increase the volume", "turn the volume up",
                                              "make it louder"};
  doc["intents"]["pauseMusic"]["utterances"] = {"pause the music", "stop playing", "pause",
                                                "pause it please", "stop the music"};
  doc["slots"]["artist"] = {{"kind", "gazetteer"}, {"values", names}};
  return doc.dump(1);
}

std::vector<LabeledUtterance> SampleInGrammar(const grammar::Dataset &dataset, std::size_t n,
                                              std::uint64_t seed) {
  std::vector<std::pair<std::string, const grammar::AnnotatedUtterance *>> pool;
  for (const auto &[intent, list] : dataset.intents) {
    for (const auto &u : list) pool.emplace_back(intent, &u);
  }
  std::mt19937_64 rng(seed);
  std::vector<LabeledUtterance> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto &[intent, u] = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    grammar::AnnotatedUtterance filled = *u;
    for (auto &seg : filled.segments) {
      if (!seg.IsSlot()) continue;
      const auto &slot = dataset.slots.at(seg.slot);
      if (slot.kind != grammar::SlotKind::kGazetteer || slot.values.empty()) continue;
      const auto &v =
          slot.values[std::uniform_int_distribution<std::size_t>(0, slot.values.size() - 1)(rng)];
      seg.raw = v;
      seg.tokens = grammar::Normalize(v, dataset.normalizer);
    }
    filled.raw = grammar::Render(filled);
    out.push_back({intent, filled, 0});
  }
  return out;
}

grammar::AnnotatedUtterance WithSlotValue(const grammar::AnnotatedUtterance &u,
                                          const std::string &slot, const std::string &value) {
  grammar::AnnotatedUtterance out = u;
  for (auto &seg : out.segments) {
    if (seg.slot == slot) {
      seg.raw = value;
      seg.tokens = grammar::Normalize(value);
      break;
    }
  }
  out.raw = grammar::Render(out);
  return out;
}

std::map<wfst::LabelString, wfst::Weight> HandExpand(
    const std::map<wfst::LabelString, wfst::Weight> &root,
    const std::map<wfst::Label, std::map<wfst::LabelString, wfst::Weight>> &subs,
    std::size_t max_len) {
  using wfst::Weight;
  // Substitution strings ordered by length so the walk can stop early.
  std::map<wfst::Label, std::vector<std::pair<wfst::LabelString, Weight>>> sorted;
  for (const auto &[label, lang] : subs) {
    auto &v = sorted[label];
    v.assign(lang.begin(), lang.end());
    std::stable_sort(v.begin(), v.end(),
                     [](const auto &a, const auto &b) { return a.first.size() < b.first.size(); });
  }
  std::map<wfst::LabelString, Weight> out;
  wfst::LabelString buffer;
  for (const auto &[pattern, w] : root) {
    if (pattern.size() > max_len) continue;
    std::function<void(std::size_t, Weight)> expand = [&](std::size_t i, Weight acc) {
      if (i == pattern.size()) {
        auto [it, inserted] = out.emplace(buffer, acc);
        if (!inserted) it->second = wfst::Plus(it->second, acc);
        return;
      }
      // Every remaining symbol yields at least one word.
      const std::size_t rest = pattern.size() - i - 1;
      auto sub = sorted.find(pattern[i]);
      if (sub == sorted.end()) {
        buffer.push_back(pattern[i]);
        expand(i + 1, acc);
        buffer.pop_back();
        return;
      }
      for (const auto &[s, sw] : sub->second) {
        if (buffer.size() + s.size() + rest > max_len) break;
        buffer.insert(buffer.end(), s.begin(), s.end());
        expand(i + 1, wfst::Times(acc, sw));
        buffer.resize(buffer.size() - s.size());
      }
    };
    expand(0, w);
  }
  return out;
}

std::string DataDir() { return SLU_DATA_DIR; }

}  // namespace slu::testing
