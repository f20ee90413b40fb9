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

#ifndef SLU_ENGINE_EVALUATE_H_
#define SLU_ENGINE_EVALUATE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "slu/engine/assistant.h"
#include "slu/grammar/annotation.h"
#include "slu/nlu/optimize.h"

namespace slu::engine {

struct EvalItem {
  std::string intent;
  grammar::AnnotatedUtterance utterance;
  double noise = 0;
  std::uint64_t seed = 0;
  int tier = 0;
};

// Per-utterance comparison against the reference.
struct Outcome {
  std::string gold_intent;
  std::string predicted_intent;  // empty for the none result
  bool perfect = false;
  bool exact_transcript = false;
  std::size_t reference_words = 0;
  std::size_t word_errors = 0;
  std::size_t frames = 0;
  double decode_seconds = 0;
  int tier = 0;
};

struct IntentScore {
  std::size_t support = 0;
  std::size_t predicted = 0;
  std::size_t correct = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  friend bool operator==(const IntentScore &, const IntentScore &) = default;
};

struct TierScore {
  std::size_t count = 0;
  std::size_t intent_correct = 0;
  std::size_t perfect = 0;
  double intent_accuracy = 0;
  double perfect_parse = 0;
  friend bool operator==(const TierScore &, const TierScore &) = default;
};

struct EvalReport {
  std::map<std::string, IntentScore> per_intent;
  double macro_f1 = 0;
  double intent_accuracy = 0;
  double perfect_parse = 0;
  double wer = 0;
  double exact_transcripts = 0;
  std::size_t utterances = 0;
  std::size_t intent_correct = 0;
  std::size_t perfect = 0;
  std::size_t none_results = 0;
  std::size_t reference_words = 0;
  std::size_t word_errors = 0;
  std::map<int, TierScore> tiers;
  // Lazy states expanded over all sessions of the run.
  std::size_t expanded_states = 0;
  double decode_seconds = 0;
  double audio_seconds = 0;
  double real_time_factor = 0;
  friend bool operator==(const EvalReport &, const EvalReport &) = default;
};

struct EvalOptions {
  nlu::Execution execution = nlu::Execution::kParallel;
  // Declared frame rate of the simulated audio.
  double frames_per_second = 100.0;
};

std::size_t EditDistance(const std::vector<std::string> &a, const std::vector<std::string> &b);

// Intent right and the same multiset of (slot, value) pairs.
bool PerfectParse(const std::string &gold_intent, const std::vector<grammar::SlotSpan> &gold,
                  const std::string &intent, const std::vector<grammar::SlotSpan> &slots);

// Metrics over outcomes. Macro F1 averages the intents that occur as
// reference or prediction.
EvalReport Summarize(const std::vector<Outcome> &outcomes, double frames_per_second = 100.0);

// Simulates, decodes and parses every item. Parallel runs use one session
// per thread and give the same outcomes as serial ones.
EvalReport Evaluate(const Assistant &assistant, const std::vector<EvalItem> &items,
                    const EvalOptions &options = {});
std::vector<Outcome> RunItems(const Assistant &assistant, const std::vector<EvalItem> &items,
                              nlu::Execution execution, std::size_t *expanded_states = nullptr);

std::string ReportToJson(const EvalReport &report);
EvalReport ReportFromJson(const std::string &json);

// JSON array of {"intent", "text" (annotated), optional "noise", "seed",
// "tier"}.
std::vector<EvalItem> ParseTestSet(const std::string &json,
                                   const grammar::NormalizerOptions &normalizer = {});
std::string TestSetToJson(const std::vector<EvalItem> &items);

}  // namespace slu::engine

#endif  // SLU_ENGINE_EVALUATE_H_
