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

#ifndef SLU_ENGINE_ASSISTANT_H_
#define SLU_ENGINE_ASSISTANT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "slu/decoder/confusion.h"
#include "slu/decoder/decoder.h"
#include "slu/decoder/posteriors.h"
#include "slu/engine/graph.h"
#include "slu/grammar/dataset.h"
#include "slu/ngram/ngram.h"
#include "slu/nlu/nlu.h"
#include "slu/wfst/lazy-compose.h"

namespace slu::engine {

struct EngineConfig {
  int pattern_order = 2;
  int slot_order = 3;
  double beam = 16.0;
  std::size_t nbest = 10;
  double acoustic_scale = 1.0;
  // Multiplies hypothesis scores before the confusion-network softmax.
  double posterior_scale = 0.1;
  double oov_threshold = decoder::kDefaultOovThreshold;
  // Utterances whose mean per-frame top posterior is below this carry no
  // usable speech: every token is tagged unknown.
  double min_frame_confidence = 0.5;
  int frames_per_phone = 3;
  wfst::ComposeFilter filter = wfst::ComposeFilter::kLabelReachability;
  std::uint64_t seed = 0;
  int nlu_epochs = 200;
  double nlu_step = 1.0;
  double nlu_l2 = 1e-3;
  int nlu_clusters = 32;
  bool intent_gazetteers = true;
  grammar::NormalizerOptions normalizer;

  decoder::DecodeOptions Decode() const;
  nlu::NluOptions Nlu() const;
  std::string ToJson() const;
  static EngineConfig FromJson(const std::string &json);
};

struct SluResult {
  decoder::TaggedTranscript transcript;
  // Empty for the none result.
  std::string intent;
  std::vector<std::pair<std::string, double>> probabilities;
  std::vector<grammar::SlotSpan> slots;
  // Cost of the best hypothesis; infinite when nothing was decoded.
  double score = 0;
  bool IsNone() const { return intent.empty(); }
  std::vector<std::string> Words() const;
};

std::string ResultToJson(const SluResult &result);

class Session;

// A trained assistant. Immutable once built; copies share the decoding graph.
class Assistant {
 public:
  static Assistant Train(const grammar::Dataset &dataset, const EngineConfig &config = {});
  static Assistant FromBytes(std::string_view bytes);
  static Assistant Load(const std::filesystem::path &path);

  std::string ToBytes() const;
  void Save(const std::filesystem::path &path) const;

  // Decodes and parses one utterance with a throwaway session.
  SluResult Parse(const decoder::PosteriorMatrix &posteriors) const;
  // Text-side parse, bypassing the decoder.
  nlu::NluResult ParseText(const std::string &text) const;

  // New assistant knowing extra values of a gazetteer slot. Throws
  // UnsupportedInjectionError for grammar slots and ParameterError for
  // unknown ones.
  Assistant Inject(const std::string &slot, const std::vector<std::string> &values) const;

  decoder::PosteriorMatrix Simulate(const std::vector<std::string> &words, double noise,
                                    std::uint64_t seed) const;

  const EngineConfig &Config() const { return config_; }
  const GraphComponents &Components() const { return components_; }
  const DecodingGraph &Graph() const { return *graph_; }
  const nlu::NluModel &Nlu() const { return nlu_; }
  const std::map<std::string, ngram::NGramCounts> &SlotCounts() const { return slot_counts_; }
  std::vector<std::string> Intents() const { return nlu_.Intent().Classes(); }

 private:
  friend class Session;
  void BuildGraph();

  EngineConfig config_;
  GraphComponents components_;
  std::map<std::string, grammar::SlotKind> slot_kinds_;
  std::map<std::string, ngram::NGramCounts> slot_counts_;
  nlu::NluModel nlu_;
  std::shared_ptr<const DecodingGraph> graph_;
};

// One decoding session. Keeps its lazily expanded graph between utterances;
// not thread-safe, so use one per thread.
class Session {
 public:
  explicit Session(const Assistant &assistant);

  SluResult Parse(const decoder::PosteriorMatrix &posteriors);
  const wfst::ComposeStats &GraphStats() const { return fst_.Stats(); }
  const decoder::DecodeStats &LastDecodeStats() const { return last_; }

 private:
  const Assistant *assistant_;
  wfst::LazyComposeFst fst_;
  decoder::DecodeStats last_;
};

}  // namespace slu::engine

#endif  // SLU_ENGINE_ASSISTANT_H_
