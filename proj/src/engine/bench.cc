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

#include "slu/engine/bench.h"

#include <chrono>
#include <cmath>
#include <random>

#include <json.hpp>

#include "slu/base/errors.h"
#include "slu/wfst/compose.h"

namespace slu::engine {

using nlohmann::json;

std::vector<std::vector<std::string>> SampleSentences(const Assistant &assistant, std::size_t n,
                                                      std::uint64_t seed, std::size_t max_words) {
  const wfst::Fst &g = *assistant.Graph().G();
  const auto &output = assistant.Graph().Output();
  if (g.Start() == wfst::kNoState) throw PreconditionError("empty language model");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::string>> out;
  std::size_t attempts = 0;
  while (out.size() < n) {
    if (++attempts > 100 * (n + 1)) throw PreconditionError("language model yields no short sentences");
    std::vector<std::string> words;
    wfst::StateId s = g.Start();
    while (words.size() <= max_words) {
      const auto arcs = g.Arcs(s);
      // Index arcs.size() stands for stopping.
      std::vector<double> p(arcs.size() + 1);
      for (std::size_t i = 0; i < arcs.size(); ++i) p[i] = std::exp(-arcs[i].weight.Value());
      p.back() = g.IsFinal(s) ? std::exp(-g.Final(s).Value()) : 0.0;
      const std::size_t pick = std::discrete_distribution<std::size_t>(p.begin(), p.end())(rng);
      if (pick == arcs.size()) break;
      const auto &arc = arcs[pick];
      if (arc.olabel != wfst::kEpsilon) {
        const wfst::Label w = output.to_word.empty() ? arc.olabel : output.to_word[arc.olabel];
        words.push_back(output.words->Symbol(w));
      }
      s = arc.nextstate;
    }
    if (!words.empty() && words.size() <= max_words) out.push_back(std::move(words));
  }
  return out;
}

BenchReport Bench(const Assistant &assistant, const BenchOptions &options) {
  BenchReport r;
  const auto sentences = SampleSentences(assistant, options.utterances, options.seed);
  Session session(assistant);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const auto post = assistant.Simulate(sentences[i], options.noise, options.seed + i);
    const auto start = std::chrono::steady_clock::now();
    session.Parse(post);
    r.decode_seconds +=
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.frames += post.NumFrames();
  }
  r.utterances = sentences.size();
  r.audio_seconds = static_cast<double>(r.frames) / options.frames_per_second;
  r.real_time_factor = r.audio_seconds > 0 ? r.decode_seconds / r.audio_seconds : 0;
  r.expanded_states = session.GraphStats().expanded_states;
  if (options.static_composition) {
    const auto hclg = wfst::ComposeStatic(*assistant.Graph().Hcl(), *assistant.Graph().G());
    r.static_states = static_cast<std::size_t>(hclg.NumStates());
    r.static_arcs = hclg.TotalArcs();
  }
  r.bundle_bytes = assistant.ToBytes().size();
  return r;
}

std::string BenchToJson(const BenchReport &r) {
  json j{{"utterances", r.utterances},
         {"frames", r.frames},
         {"audio_seconds", r.audio_seconds},
         {"decode_seconds", r.decode_seconds},
         {"real_time_factor", r.real_time_factor},
         {"expanded_states", r.expanded_states},
         {"static_states", r.static_states},
         {"static_arcs", r.static_arcs},
         {"bundle_bytes", r.bundle_bytes}};
  return j.dump(1);
}

BenchReport BenchFromJson(const std::string &text) {
  try {
    const json j = json::parse(text);
    BenchReport r;
    r.utterances = j.at("utterances");
    r.frames = j.at("frames");
    r.audio_seconds = j.at("audio_seconds");
    r.decode_seconds = j.at("decode_seconds");
    r.real_time_factor = j.at("real_time_factor");
    r.expanded_states = j.at("expanded_states");
    r.static_states = j.at("static_states");
    r.static_arcs = j.at("static_arcs");
    r.bundle_bytes = j.at("bundle_bytes");
    return r;
  } catch (const json::exception &e) {
    throw SchemaError(std::string("bench report: ") + e.what());
  }
}

}  // namespace slu::engine
