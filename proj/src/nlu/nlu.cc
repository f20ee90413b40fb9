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

#include "slu/nlu/nlu.h"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "slu/base/errors.h"

namespace slu::nlu {
namespace {

using nlohmann::json;

std::vector<SparseVector> Vectorize(FeatureTable *table,
                                    const std::vector<std::vector<std::string>> &names) {
  std::vector<SparseVector> out;
  out.reserve(names.size());
  for (const auto &n : names) out.push_back(table->Vectorize(n));
  return out;
}

std::vector<SparseVector> Lookup(const FeatureTable &table,
                                 const std::vector<std::vector<std::string>> &names) {
  std::vector<SparseVector> out;
  out.reserve(names.size());
  for (const auto &n : names) out.push_back(table.Lookup(n));
  return out;
}

json TableJson(const FeatureTable &table) { return table.Names(); }

FeatureTable TableFromJson(const json &j) {
  FeatureTable table;
  for (const auto &name : j) table.Intern(name.get<std::string>());
  return table;
}

}  // namespace

std::vector<std::string> NluModel::IntentFeatures(const Tokens &tokens) const {
  return UtteranceFeatures(tokens, clusters_, gazetteers_, intent_clusters_, intent_gazetteers_);
}

NluModel NluModel::Train(const grammar::Dataset &dataset, const NluOptions &options) {
  grammar::ValidateDataset(dataset);
  NluModel model;
  model.features_ = options.features;
  model.intent_clusters_ = options.intent_clusters;
  model.intent_gazetteers_ = options.intent_gazetteers;
  model.normalizer_ = dataset.normalizer;

  std::vector<Tokens> corpus;
  for (const auto &[name, utterances] : dataset.intents) {
    for (const auto &u : utterances) corpus.push_back(u.Words());
  }
  if (options.clusters) {
    model.clusters_ = *options.clusters;
  } else {
    std::set<std::string> vocab;
    for (const auto &s : corpus) vocab.insert(s.begin(), s.end());
    const int k = std::min<int>(options.num_clusters, static_cast<int>(vocab.size()));
    if (k >= 1) model.clusters_ = InduceClusters(corpus, k);
  }
  for (const auto &[slot, def] : dataset.slots) {
    GazetteerParser parser(slot);
    for (const auto &value : grammar::SlotCorpus(dataset, slot)) parser.Add(value);
    model.gazetteers_.push_back(std::move(parser));
  }

  std::vector<std::string> classes;
  for (const auto &[name, utterances] : dataset.intents) {
    if (utterances.empty()) throw TrainingError("intent '" + name + "' has no utterance");
    classes.push_back(name);
  }
  FeatureTable intent_table;
  std::vector<IntentExample> examples;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (const auto &u : dataset.intents.at(classes[c])) {
      examples.push_back(
          IntentExample{intent_table.Vectorize(model.IntentFeatures(u.Words())),
                        static_cast<int>(c)});
    }
  }
  model.intent_ = IntentModel(classes, std::move(intent_table));
  TrainIntentModel(examples, options.intent_optimizer, &model.intent_);

  for (const auto &[name, utterances] : dataset.intents) {
    std::set<std::string> slots;
    for (const auto &u : utterances) {
      for (const auto &seg : u.segments) {
        if (seg.IsSlot()) slots.insert(seg.slot);
      }
    }
    if (slots.empty()) {
      model.crfs_.emplace(name, CrfModel(BioLabels({}), FeatureTable()));
      continue;
    }
    const auto labels = BioLabels({slots.begin(), slots.end()});
    FeatureTable table;
    std::vector<CrfSequence> data;
    std::vector<std::vector<std::string>> tags;
    for (const auto &u : utterances) {
      const Tokens words = u.Words();
      CrfSequence seq;
      seq.x = Vectorize(&table,
                        FeaturizeSequence(words, model.clusters_, model.gazetteers_,
                                          model.features_));
      for (const auto &tag : ToBio(u)) {
        seq.y.push_back(static_cast<int>(std::find(labels.begin(), labels.end(), tag) -
                                         labels.begin()));
      }
      data.push_back(std::move(seq));
    }
    CrfModel crf(labels, std::move(table));
    TrainCrfModel(data, options.crf_optimizer, &crf);
    model.crfs_.emplace(name, std::move(crf));
  }
  return model;
}

NluResult NluModel::Parse(const std::string &text) const {
  return Parse(grammar::Normalize(text, normalizer_));
}

NluResult NluModel::Parse(const Tokens &tokens) const {
  NluResult result;
  const auto p = intent_.Probabilities(intent_.Features().Lookup(IntentFeatures(tokens)));
  for (int c = 0; c < intent_.NumClasses(); ++c) {
    result.probabilities.emplace_back(intent_.Classes()[c], p[c]);
  }
  result.intent = intent_.Classes()[intent_.Predict(p)];
  const CrfModel &crf = crfs_.at(result.intent);
  if (tokens.empty() || crf.NumLabels() == 1) return result;
  const auto x = Lookup(crf.Features(), FeaturizeSequence(tokens, clusters_, gazetteers_, features_));
  result.slots = FromBioLenient(tokens, crf.Tag(x));
  return result;
}

NluModel NluModel::WithGazetteerValues(const std::string &slot,
                                       const std::vector<Tokens> &values) const {
  NluModel copy = *this;
  for (auto &g : copy.gazetteers_) {
    if (g.Slot() == slot) {
      g = AugmentGazetteer(g, values);
      return copy;
    }
  }
  throw ParameterError("no gazetteer for slot '" + slot + "'");
}

std::string NluModel::ToJson() const {
  json j;
  j["features"] = {{"window", features_.window},
                   {"max_affix", features_.max_affix},
                   {"clusters", features_.clusters},
                   {"gazetteers", features_.gazetteers}};
  j["intent_clusters"] = intent_clusters_;
  j["intent_gazetteers"] = intent_gazetteers_;
  j["normalizer"] = {{"lowercase", normalizer_.lowercase},
                     {"strip_punctuation", normalizer_.strip_punctuation}};
  j["clusters"] = clusters_.Entries();
  json gaz = json::array();
  for (const auto &g : gazetteers_) gaz.push_back({{"slot", g.Slot()}, {"values", g.Values()}});
  j["gazetteers"] = gaz;
  j["intent"] = {{"classes", intent_.Classes()},
                 {"features", TableJson(intent_.Features())},
                 {"weights", intent_.Weights()}};
  json crfs = json::object();
  for (const auto &[name, crf] : crfs_) {
    crfs[name] = {{"labels", crf.Labels()},
                  {"features", TableJson(crf.Features())},
                  {"weights", crf.Weights()}};
  }
  j["crfs"] = crfs;
  return j.dump();
}

NluModel NluModel::FromJson(const std::string &text) {
  NluModel m;
  try {
    const json j = json::parse(text);
    const auto &f = j.at("features");
    m.features_.window = f.at("window");
    m.features_.max_affix = f.at("max_affix");
    m.features_.clusters = f.at("clusters");
    m.features_.gazetteers = f.at("gazetteers");
    m.intent_clusters_ = j.at("intent_clusters");
    m.intent_gazetteers_ = j.at("intent_gazetteers");
    m.normalizer_.lowercase = j.at("normalizer").at("lowercase");
    m.normalizer_.strip_punctuation = j.at("normalizer").at("strip_punctuation");
    for (const auto &[w, c] : j.at("clusters").items()) m.clusters_.Set(w, c.get<int>());
    for (const auto &g : j.at("gazetteers")) {
      GazetteerParser parser(g.at("slot").get<std::string>());
      for (const auto &v : g.at("values")) parser.Add(v.get<Tokens>());
      m.gazetteers_.push_back(std::move(parser));
    }
    const auto &in = j.at("intent");
    m.intent_ = IntentModel(in.at("classes").get<std::vector<std::string>>(),
                            TableFromJson(in.at("features")));
    m.intent_.MutableWeights() = in.at("weights").get<std::vector<double>>();
    if (m.intent_.Weights().size() !=
        static_cast<std::size_t>(m.intent_.NumClasses()) * m.intent_.Features().Size()) {
      throw SchemaError("intent weight count mismatch");
    }
    for (const auto &[name, c] : j.at("crfs").items()) {
      CrfModel crf(c.at("labels").get<std::vector<std::string>>(), TableFromJson(c.at("features")));
      crf.MutableWeights() = c.at("weights").get<std::vector<double>>();
      if (crf.Weights().size() != crf.NumParameters()) {
        throw SchemaError("CRF weight count mismatch for intent '" + name + "'");
      }
      m.crfs_.emplace(name, std::move(crf));
    }
    for (const auto &c : m.intent_.Classes()) {
      if (!m.crfs_.count(c)) throw SchemaError("no CRF for intent '" + c + "'");
    }
  } catch (const json::exception &e) {
    throw SchemaError(std::string("NLU model: ") + e.what());
  }
  return m;
}

}  // namespace slu::nlu
