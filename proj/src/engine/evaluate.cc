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

#include "slu/engine/evaluate.h"

#include <algorithm>
#include <chrono>
#include <exception>
#include <set>

#include <json.hpp>

#include "slu/base/errors.h"

namespace slu::engine {
namespace {

using nlohmann::json;

std::vector<std::pair<std::string, std::string>> SlotPairs(
    const std::vector<grammar::SlotSpan> &slots) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto &s : slots) out.emplace_back(s.slot, s.value);
  std::sort(out.begin(), out.end());
  return out;
}

Outcome RunOne(Session *session, const Assistant &assistant, const EvalItem &item) {
  const auto words = item.utterance.Words();
  const auto post = assistant.Simulate(words, item.noise, item.seed);
  const auto start = std::chrono::steady_clock::now();
  const SluResult r = session->Parse(post);
  Outcome o;
  o.decode_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.frames = post.NumFrames();
  o.gold_intent = item.intent;
  o.predicted_intent = r.intent;
  o.perfect = PerfectParse(item.intent, item.utterance.Slots(), r.intent, r.slots);
  const auto hyp = r.Words();
  o.reference_words = words.size();
  o.word_errors = EditDistance(words, hyp);
  o.exact_transcript = hyp == words;
  o.tier = item.tier;
  return o;
}

}  // namespace

std::size_t EditDistance(const std::vector<std::string> &a, const std::vector<std::string> &b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] != b[j - 1])});
      diag = up;
    }
  }
  return row[b.size()];
}

bool PerfectParse(const std::string &gold_intent, const std::vector<grammar::SlotSpan> &gold,
                  const std::string &intent, const std::vector<grammar::SlotSpan> &slots) {
  return gold_intent == intent && SlotPairs(gold) == SlotPairs(slots);
}

EvalReport Summarize(const std::vector<Outcome> &outcomes, double frames_per_second) {
  EvalReport r;
  r.utterances = outcomes.size();
  std::size_t exact = 0;
  for (const auto &o : outcomes) {
    const bool correct = o.gold_intent == o.predicted_intent;
    r.intent_correct += correct;
    r.perfect += o.perfect;
    r.none_results += o.predicted_intent.empty();
    r.reference_words += o.reference_words;
    r.word_errors += o.word_errors;
    exact += o.exact_transcript;
    r.decode_seconds += o.decode_seconds;
    r.audio_seconds += static_cast<double>(o.frames) / frames_per_second;
    auto &gold = r.per_intent[o.gold_intent];
    ++gold.support;
    if (!o.predicted_intent.empty()) ++r.per_intent[o.predicted_intent].predicted;
    if (correct) ++gold.correct;
    auto &tier = r.tiers[o.tier];
    ++tier.count;
    tier.intent_correct += correct;
    tier.perfect += o.perfect;
  }
  auto rate = [](std::size_t num, std::size_t den) {
    return den ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
  };
  double f1_sum = 0;
  for (auto &[name, s] : r.per_intent) {
    s.precision = rate(s.correct, s.predicted);
    s.recall = rate(s.correct, s.support);
    s.f1 = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0;
    f1_sum += s.f1;
  }
  r.macro_f1 = r.per_intent.empty() ? 0 : f1_sum / static_cast<double>(r.per_intent.size());
  r.intent_accuracy = rate(r.intent_correct, r.utterances);
  r.perfect_parse = rate(r.perfect, r.utterances);
  r.wer = rate(r.word_errors, r.reference_words);
  r.exact_transcripts = rate(exact, r.utterances);
  r.real_time_factor = r.audio_seconds > 0 ? r.decode_seconds / r.audio_seconds : 0;
  for (auto &[t, s] : r.tiers) {
    s.intent_accuracy = rate(s.intent_correct, s.count);
    s.perfect_parse = rate(s.perfect, s.count);
  }
  return r;
}

std::vector<Outcome> RunItems(const Assistant &assistant, const std::vector<EvalItem> &items,
                              nlu::Execution execution, std::size_t *expanded_states) {
  std::vector<Outcome> outcomes(items.size());
  std::size_t expanded = 0;
  if (execution == nlu::Execution::kSerial) {
    Session session(assistant);
    for (std::size_t i = 0; i < items.size(); ++i) outcomes[i] = RunOne(&session, assistant, items[i]);
    expanded = session.GraphStats().expanded_states;
  } else {
    std::exception_ptr error;
    const long n = static_cast<long>(items.size());
#pragma omp parallel reduction(+ : expanded)
    {
      Session session(assistant);
#pragma omp for schedule(dynamic)
      for (long i = 0; i < n; ++i) {
        try {
          outcomes[i] = RunOne(&session, assistant, items[i]);
        } catch (...) {
#pragma omp critical(slu_eval_error)
          if (!error) error = std::current_exception();
        }
      }
      expanded += session.GraphStats().expanded_states;
    }
    if (error) std::rethrow_exception(error);
  }
  if (expanded_states) *expanded_states = expanded;
  return outcomes;
}

EvalReport Evaluate(const Assistant &assistant, const std::vector<EvalItem> &items,
                    const EvalOptions &options) {
  std::size_t expanded = 0;
  auto outcomes = RunItems(assistant, items, options.execution, &expanded);
  EvalReport r = Summarize(outcomes, options.frames_per_second);
  r.expanded_states = expanded;
  return r;
}

std::string ReportToJson(const EvalReport &r) {
  json per = json::object();
  for (const auto &[name, s] : r.per_intent) {
    per[name] = {{"support", s.support},     {"predicted", s.predicted}, {"correct", s.correct},
                 {"precision", s.precision}, {"recall", s.recall},       {"f1", s.f1}};
  }
  json tiers = json::object();
  for (const auto &[t, s] : r.tiers) {
    tiers[std::to_string(t)] = {{"count", s.count},
                                {"intent_correct", s.intent_correct},
                                {"perfect", s.perfect},
                                {"intent_accuracy", s.intent_accuracy},
                                {"perfect_parse", s.perfect_parse}};
  }
  json j{{"per_intent", per},
         {"macro_f1", r.macro_f1},
         {"intent_accuracy", r.intent_accuracy},
         {"perfect_parse", r.perfect_parse},
         {"wer", r.wer},
         {"exact_transcripts", r.exact_transcripts},
         {"counts",
          {{"utterances", r.utterances},
           {"intent_correct", r.intent_correct},
           {"perfect", r.perfect},
           {"none_results", r.none_results},
           {"reference_words", r.reference_words},
           {"word_errors", r.word_errors}}},
         {"tiers", tiers},
         {"expanded_states", r.expanded_states},
         {"decode_seconds", r.decode_seconds},
         {"audio_seconds", r.audio_seconds},
         {"real_time_factor", r.real_time_factor}};
  return j.dump(1);
}

EvalReport ReportFromJson(const std::string &text) {
  EvalReport r;
  try {
    const json j = json::parse(text);
    for (const auto &[name, s] : j.at("per_intent").items()) {
      IntentScore &x = r.per_intent[name];
      x.support = s.at("support");
      x.predicted = s.at("predicted");
      x.correct = s.at("correct");
      x.precision = s.at("precision");
      x.recall = s.at("recall");
      x.f1 = s.at("f1");
    }
    r.macro_f1 = j.at("macro_f1");
    r.intent_accuracy = j.at("intent_accuracy");
    r.perfect_parse = j.at("perfect_parse");
    r.wer = j.at("wer");
    r.exact_transcripts = j.at("exact_transcripts");
    const auto &c = j.at("counts");
    r.utterances = c.at("utterances");
    r.intent_correct = c.at("intent_correct");
    r.perfect = c.at("perfect");
    r.none_results = c.at("none_results");
    r.reference_words = c.at("reference_words");
    r.word_errors = c.at("word_errors");
    for (const auto &[t, s] : j.at("tiers").items()) {
      TierScore &x = r.tiers[std::stoi(t)];
      x.count = s.at("count");
      x.intent_correct = s.at("intent_correct");
      x.perfect = s.at("perfect");
      x.intent_accuracy = s.at("intent_accuracy");
      x.perfect_parse = s.at("perfect_parse");
    }
    r.expanded_states = j.at("expanded_states");
    r.decode_seconds = j.at("decode_seconds");
    r.audio_seconds = j.at("audio_seconds");
    r.real_time_factor = j.at("real_time_factor");
  } catch (const json::exception &e) {
    throw SchemaError(std::string("report: ") + e.what());
  }
  return r;
}

std::vector<EvalItem> ParseTestSet(const std::string &text,
                                   const grammar::NormalizerOptions &normalizer) {
  std::vector<EvalItem> items;
  try {
    const json j = json::parse(text);
    if (!j.is_array()) throw SchemaError("test set: expected an array");
    for (const auto &e : j) {
      EvalItem item;
      item.intent = e.at("intent").get<std::string>();
      item.utterance = grammar::ParseAnnotated(e.at("text").get<std::string>(), normalizer);
      item.noise = e.value("noise", 0.0);
      item.seed = e.value("seed", std::uint64_t{0});
      item.tier = e.value("tier", 0);
      items.push_back(std::move(item));
    }
  } catch (const json::exception &e) {
    throw SchemaError(std::string("test set: ") + e.what());
  } catch (const AnnotationError &e) {
    throw SchemaError(std::string("test set: ") + e.what());
  }
  return items;
}

std::string TestSetToJson(const std::vector<EvalItem> &items) {
  json j = json::array();
  for (const auto &i : items) {
    j.push_back({{"intent", i.intent},
                 {"text", grammar::Render(i.utterance)},
                 {"noise", i.noise},
                 {"seed", i.seed},
                 {"tier", i.tier}});
  }
  return j.dump(1);
}

}  // namespace slu::engine
