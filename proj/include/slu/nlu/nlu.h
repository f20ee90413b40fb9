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

#ifndef SLU_NLU_NLU_H_
#define SLU_NLU_NLU_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slu/grammar/dataset.h"
#include "slu/nlu/crf.h"
#include "slu/nlu/features.h"
#include "slu/nlu/intent.h"

namespace slu::nlu {

struct NluOptions {
  GdOptions intent_optimizer;
  GdOptions crf_optimizer;
  FeatureOptions features;
  // Word clusters for the intent features. Gazetteer flags can be switched
  // off for the intent classifier independently of the slot filler.
  bool intent_clusters = true;
  bool intent_gazetteers = true;
  // Induced cluster count, clamped to the vocabulary size. Ignored when
  // external clusters are given.
  int num_clusters = 32;
  std::optional<ClusterMap> clusters;
};

struct NluResult {
  // Empty when no intent applies.
  std::string intent;
  std::vector<std::pair<std::string, double>> probabilities;
  std::vector<grammar::SlotSpan> slots;
  bool IsNone() const { return intent.empty(); }
};

class NluModel {
 public:
  static NluModel Train(const grammar::Dataset &dataset, const NluOptions &options = {});

  NluResult Parse(const Tokens &tokens) const;
  NluResult Parse(const std::string &text) const;

  // Copy with extra values known to the slot's gazetteer.
  NluModel WithGazetteerValues(const std::string &slot, const std::vector<Tokens> &values) const;

  const IntentModel &Intent() const { return intent_; }
  const std::map<std::string, CrfModel> &Crfs() const { return crfs_; }
  const ClusterMap &Clusters() const { return clusters_; }
  const std::vector<GazetteerParser> &Gazetteers() const { return gazetteers_; }
  const FeatureOptions &Options() const { return features_; }

  std::string ToJson() const;
  static NluModel FromJson(const std::string &json);

 private:
  std::vector<std::string> IntentFeatures(const Tokens &tokens) const;

  FeatureOptions features_;
  bool intent_clusters_ = true;
  bool intent_gazetteers_ = true;
  grammar::NormalizerOptions normalizer_;
  ClusterMap clusters_;
  std::vector<GazetteerParser> gazetteers_;
  IntentModel intent_;
  std::map<std::string, CrfModel> crfs_;
};

}  // namespace slu::nlu

#endif  // SLU_NLU_NLU_H_
