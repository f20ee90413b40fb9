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

#include "slu/engine/assistant.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "slu/base/errors.h"
#include "slu/engine/container.h"
#include "slu/grammar/class-lm.h"
#include "slu/lexicon/hcl.h"

namespace slu::engine {
namespace {

using nlohmann::json;

constexpr char kGazetteerKind[] = "gazetteer";
constexpr char kGrammarKind[] = "grammar";

std::string CountsToJson(const ngram::NGramCounts &counts) {
  json grams = json::array();
  for (const auto &[gram, n] : counts.Counts()) grams.push_back({gram, n});
  return json{{"order", counts.Order()}, {"sentences", counts.NumSentences()}, {"grams", grams}}
      .dump();
}

ngram::NGramCounts CountsFromJson(const std::string &text) {
  const json j = json::parse(text);
  ngram::NGramCounts counts(j.at("order").get<int>());
  for (const auto &g : j.at("grams")) {
    counts.SetCount(g.at(0).get<ngram::Tokens>(), g.at(1).get<std::uint64_t>());
  }
  counts.SetNumSentences(j.at("sentences").get<std::size_t>());
  return counts;
}

const std::string &Section(const std::map<std::string, std::string> &sections,
                           const std::string &name) {
  auto it = sections.find(name);
  if (it == sections.end()) throw SchemaError("bundle: missing section '" + name + "'");
  return it->second;
}

void CheckLabels(const wfst::Fst &fst, wfst::Label ilimit, wfst::Label olimit,
                 const std::string &what) {
  for (wfst::StateId s = 0; s < fst.NumStates(); ++s) {
    for (const auto &a : fst.Arcs(s)) {
      if (a.ilabel < 0 || a.ilabel >= ilimit || a.olabel < 0 || a.olabel >= olimit) {
        throw SchemaError("bundle: " + what + " uses a label outside its alphabet");
      }
    }
  }
}

double MeanFrameConfidence(const decoder::PosteriorMatrix &post) {
  if (post.NumFrames() == 0) return 0;
  double sum = 0;
  for (std::size_t t = 0; t < post.NumFrames(); ++t) {
    sum += *std::max_element(post.Row(t), post.Row(t) + post.NumPhones());
  }
  return sum / static_cast<double>(post.NumFrames());
}

}  // namespace

decoder::DecodeOptions EngineConfig::Decode() const {
  decoder::DecodeOptions o;
  o.beam = beam;
  o.nbest = nbest;
  o.acoustic_scale = acoustic_scale;
  return o;
}

nlu::NluOptions EngineConfig::Nlu() const {
  nlu::NluOptions o;
  for (auto *gd : {&o.intent_optimizer, &o.crf_optimizer}) {
    gd->epochs = nlu_epochs;
    gd->step = nlu_step;
    gd->l2 = nlu_l2;
  }
  o.num_clusters = nlu_clusters;
  o.intent_gazetteers = intent_gazetteers;
  return o;
}

std::string EngineConfig::ToJson() const {
  json j{{"pattern_order", pattern_order},
         {"slot_order", slot_order},
         {"beam", beam},
         {"nbest", nbest},
         {"acoustic_scale", acoustic_scale},
         {"posterior_scale", posterior_scale},
         {"oov_threshold", oov_threshold},
         {"min_frame_confidence", min_frame_confidence},
         {"frames_per_phone", frames_per_phone},
         {"filter", std::string(wfst::FilterName(filter))},
         {"seed", seed},
         {"nlu_epochs", nlu_epochs},
         {"nlu_step", nlu_step},
         {"nlu_l2", nlu_l2},
         {"nlu_clusters", nlu_clusters},
         {"intent_gazetteers", intent_gazetteers},
         {"lowercase", normalizer.lowercase},
         {"strip_punctuation", normalizer.strip_punctuation}};
  return j.dump(1);
}

EngineConfig EngineConfig::FromJson(const std::string &text) {
  EngineConfig c;
  try {
    const json j = json::parse(text);
    c.pattern_order = j.at("pattern_order");
    c.slot_order = j.at("slot_order");
    c.beam = j.at("beam");
    c.nbest = j.at("nbest");
    c.acoustic_scale = j.at("acoustic_scale");
    c.posterior_scale = j.at("posterior_scale");
    c.oov_threshold = j.at("oov_threshold");
    c.min_frame_confidence = j.at("min_frame_confidence");
    c.frames_per_phone = j.at("frames_per_phone");
    c.filter = wfst::ParseFilterName(j.at("filter").get<std::string>());
    c.seed = j.at("seed");
    c.nlu_epochs = j.at("nlu_epochs");
    c.nlu_step = j.at("nlu_step");
    c.nlu_l2 = j.at("nlu_l2");
    c.nlu_clusters = j.at("nlu_clusters");
    c.intent_gazetteers = j.at("intent_gazetteers");
    c.normalizer.lowercase = j.at("lowercase");
    c.normalizer.strip_punctuation = j.at("strip_punctuation");
  } catch (const json::exception &e) {
    throw SchemaError(std::string("config: ") + e.what());
  }
  return c;
}

std::vector<std::string> SluResult::Words() const {
  std::vector<std::string> out;
  for (const auto &t : transcript) out.push_back(t.word);
  return out;
}

std::string ResultToJson(const SluResult &r) {
  json tokens = json::array();
  for (const auto &t : r.transcript) {
    tokens.push_back({{"word", t.word}, {"posterior", t.posterior}, {"unknown", t.unknown}});
  }
  json probs = json::object();
  for (const auto &[name, p] : r.probabilities) probs[name] = p;
  json slots = json::array();
  for (const auto &s : r.slots) {
    slots.push_back({{"slot", s.slot}, {"value", s.value}, {"begin", s.begin}, {"end", s.end}});
  }
  json j{{"transcript", tokens},
         {"text", grammar::Join(r.Words())},
         {"intent", r.IsNone() ? json(nullptr) : json(r.intent)},
         {"probabilities", probs},
         {"slots", slots},
         {"score", std::isfinite(r.score) ? json(r.score) : json(nullptr)}};
  return j.dump(1);
}

Assistant Assistant::Train(const grammar::Dataset &dataset, const EngineConfig &config) {
  grammar::ValidateDataset(dataset);
  Assistant a;
  a.config_ = config;
  a.config_.normalizer = dataset.normalizer;
  grammar::ClassLmOptions lm;
  lm.pattern_order = config.pattern_order;
  lm.slot_order = config.slot_order;
  a.components_ = BuildComponents(dataset, lm);
  for (const auto &[name, def] : dataset.slots) {
    a.slot_kinds_[name] = def.kind;
    if (def.kind == grammar::SlotKind::kGazetteer) {
      a.slot_counts_.emplace(name, grammar::SlotCounts(dataset, name, config.slot_order));
    }
  }
  a.nlu_ = nlu::NluModel::Train(dataset, a.config_.Nlu());
  a.BuildGraph();
  return a;
}

void Assistant::BuildGraph() { graph_ = std::make_shared<const DecodingGraph>(components_, config_.filter); }

std::string Assistant::ToBytes() const {
  ContainerWriter w;
  w.Add("config", config_.ToJson());
  std::ostringstream phones;
  for (const auto &p : components_.phones.Phones()) phones << p << '\n';
  w.Add("phones", phones.str());
  std::ostringstream words;
  components_.words->WriteText(words);
  w.Add("words", words.str());
  std::ostringstream lex;
  lexicon::WriteC1PLexicon(components_.lexicon, lex);
  w.Add("lexicon", lex.str());
  w.Add("hcl", EncodeFst(components_.hcl));
  w.Add("g_p", EncodeFst(components_.g_p));
  json kinds = json::object();
  for (const auto &[name, kind] : slot_kinds_) {
    kinds[name] = kind == grammar::SlotKind::kGazetteer ? kGazetteerKind : kGrammarKind;
  }
  w.Add("slots", kinds.dump());
  for (const auto &[name, fst] : components_.g_s) w.Add("g_s/" + name, EncodeFst(fst));
  for (const auto &[name, counts] : slot_counts_) w.Add("counts/" + name, CountsToJson(counts));
  w.Add("nlu", nlu_.ToJson());
  return w.Finish();
}

Assistant Assistant::FromBytes(std::string_view bytes) {
  const auto sections = ReadContainer(bytes);
  Assistant a;
  a.config_ = EngineConfig::FromJson(Section(sections, "config"));
  try {
    std::vector<std::string> phones;
    std::istringstream pin(Section(sections, "phones"));
    for (std::string p; std::getline(pin, p);) phones.push_back(p);
    a.components_.phones = lexicon::PhoneSet(phones);
    std::istringstream win(Section(sections, "words"));
    a.components_.words = std::make_shared<wfst::SymbolTable>(wfst::SymbolTable::ReadText(win));
    std::istringstream lin(Section(sections, "lexicon"));
    a.components_.lexicon = lexicon::ReadC1PLexicon(lin);
  } catch (const ParseError &e) {
    throw SchemaError(std::string("bundle: ") + e.what());
  } catch (const ParameterError &e) {
    throw SchemaError(std::string("bundle: ") + e.what());
  }
  auto &c = a.components_;
  const wfst::Label num_words = c.words->Size();
  for (const auto &e : c.lexicon.Entries()) {
    if (!c.words->Contains(e.symbol)) throw SchemaError("bundle: lexicon symbol not in word table");
  }
  c.hcl = DecodeFst(Section(sections, "hcl"));
  CheckLabels(c.hcl, c.phones.Size() + 1, num_words, "HCL");
  c.hcl.SetInputSymbols(c.phones.Symbols());
  c.hcl.SetOutputSymbols(c.words);
  auto attach = [&](wfst::Fst fst, const std::string &what) {
    CheckLabels(fst, num_words, num_words, what);
    fst.SetInputSymbols(c.words);
    fst.SetOutputSymbols(c.words);
    return fst;
  };
  c.g_p = attach(DecodeFst(Section(sections, "g_p")), "G_p");
  json kinds;
  try {
    kinds = json::parse(Section(sections, "slots"));
    for (const auto &[name, kind] : kinds.items()) {
      const std::string k = kind.get<std::string>();
      if (k != kGazetteerKind && k != kGrammarKind) throw SchemaError("bundle: bad slot kind");
      a.slot_kinds_[name] = k == kGazetteerKind ? grammar::SlotKind::kGazetteer
                                                : grammar::SlotKind::kGrammar;
      c.g_s[name] = attach(DecodeFst(Section(sections, "g_s/" + name)), "slot model " + name);
      if (k == kGazetteerKind) {
        a.slot_counts_.emplace(name, CountsFromJson(Section(sections, "counts/" + name)));
      }
    }
  } catch (const json::exception &e) {
    throw SchemaError(std::string("bundle: ") + e.what());
  }
  a.nlu_ = nlu::NluModel::FromJson(Section(sections, "nlu"));
  a.BuildGraph();
  return a;
}

Assistant Assistant::Load(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read bundle " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return FromBytes(buf.str());
}

void Assistant::Save(const std::filesystem::path &path) const {
  std::ofstream out(path, std::ios::binary);
  const std::string bytes = ToBytes();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("cannot write bundle " + path.string());
}

SluResult Assistant::Parse(const decoder::PosteriorMatrix &posteriors) const {
  Session session(*this);
  return session.Parse(posteriors);
}

nlu::NluResult Assistant::ParseText(const std::string &text) const { return nlu_.Parse(text); }

decoder::PosteriorMatrix Assistant::Simulate(const std::vector<std::string> &words, double noise,
                                             std::uint64_t seed) const {
  decoder::SimulatorOptions o;
  o.frames_per_phone = config_.frames_per_phone;
  o.noise = noise;
  o.seed = seed;
  return decoder::SimulatePosteriors(words, components_.lexicon, components_.phones, o);
}

Assistant Assistant::Inject(const std::string &slot, const std::vector<std::string> &values) const {
  auto kind = slot_kinds_.find(slot);
  if (kind == slot_kinds_.end()) throw ParameterError("unknown slot '" + slot + "'");
  if (kind->second != grammar::SlotKind::kGazetteer) {
    throw UnsupportedInjectionError("slot '" + slot + "' is defined by a grammar");
  }
  std::vector<nlu::Tokens> tokens;
  for (const auto &v : values) {
    auto t = grammar::Normalize(v, config_.normalizer);
    if (!t.empty()) tokens.push_back(std::move(t));
  }
  if (tokens.empty()) return *this;

  Assistant out = *this;
  auto &c = out.components_;
  std::vector<std::pair<std::string, std::vector<lexicon::Pronunciation>>> new_words;
  std::set<std::string> seen;
  for (const auto &t : tokens) {
    for (const auto &w : t) {
      if (!c.lexicon.ContainsWord(w) && seen.insert(w).second) {
        new_words.emplace_back(w, lexicon::G2p(w));
      }
    }
  }
  if (!new_words.empty()) {
    auto injected = lexicon::AddPronunciations(c.hcl, c.lexicon, new_words, c.phones, *c.words);
    c.hcl = std::move(injected.hcl);
    c.lexicon = std::move(injected.lexicon);
    c.words = std::move(injected.words);
  }
  auto &counts = out.slot_counts_.at(slot);
  counts = ngram::UpdateCounts(counts, tokens);
  c.g_s[slot] = grammar::GazetteerFst(counts, c.words);
  c.hcl.SetOutputSymbols(c.words);
  c.g_p.SetInputSymbols(c.words);
  c.g_p.SetOutputSymbols(c.words);
  for (auto &[name, fst] : c.g_s) {
    fst.SetInputSymbols(c.words);
    fst.SetOutputSymbols(c.words);
  }
  out.nlu_ = nlu_.WithGazetteerValues(slot, tokens);
  out.BuildGraph();
  return out;
}

Session::Session(const Assistant &assistant)
    : assistant_(&assistant), fst_(assistant.graph_->NewSession()) {}

SluResult Session::Parse(const decoder::PosteriorMatrix &posteriors) {
  const Assistant &a = *assistant_;
  if (static_cast<int>(posteriors.NumPhones()) != a.components_.phones.Size()) {
    throw ParameterError("posteriors have " + std::to_string(posteriors.NumPhones()) +
                         " phones, the assistant " +
                         std::to_string(a.components_.phones.Size()));
  }
  auto decoded = decoder::ViterbiDecode(posteriors, fst_, a.graph_->Output(), a.config_.Decode());
  last_ = decoded.stats;
  SluResult out;
  if (decoded.Empty()) {
    out.score = std::numeric_limits<double>::infinity();
    return out;
  }
  out.score = decoded.nbest.front().score;
  for (auto &h : decoded.nbest) h.score *= a.config_.posterior_scale;
  out.transcript = decoder::TagOov(decoder::ToConfusionNetwork(decoded), a.config_.oov_threshold);
  if (MeanFrameConfidence(posteriors) < a.config_.min_frame_confidence) {
    for (auto &t : out.transcript) t.unknown = true;
  }
  nlu::Tokens tokens;
  bool known = false;
  for (const auto &t : out.transcript) {
    tokens.push_back(t.unknown ? std::string(nlu::kUnknownToken) : t.word);
    known |= !t.unknown;
  }
  // Nothing recognized with confidence: the none result.
  if (!known) return out;
  auto parsed = a.nlu_.Parse(tokens);
  out.intent = parsed.intent;
  out.probabilities = std::move(parsed.probabilities);
  out.slots = std::move(parsed.slots);
  return out;
}

}  // namespace slu::engine
