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

// Serial versus OpenMP timings for the two parallel kernels: evaluation over
// utterances and the NLU objective gradient.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "slu/engine/evaluate.h"
#include "slu/grammar/dataset.h"
#include "slu/nlu/crf.h"
#include "slu/nlu/intent.h"
#include "support/synthetic.h"

namespace {

using namespace slu;

template <typename F>
double BestOf(int repeats, F &&f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void Row(const char *name, double serial, double parallel, bool identical) {
  std::printf("%-16s serial %8.4f s  openmp %8.4f s  speedup %5.2fx  identical %s\n", name, serial,
              parallel, serial / parallel, identical ? "yes" : "no");
}

void BenchEval(std::size_t utterances, int repeats) {
  const auto ds = grammar::ParseDataset(testing::MusicDatasetJson(1000, 7));
  const auto a = engine::Assistant::Train(ds);
  std::vector<engine::EvalItem> items;
  std::uint64_t seed = 100;
  for (auto &s : testing::SampleInGrammar(ds, utterances, 11)) {
    items.push_back({s.intent, s.utterance, 0.1, seed++, s.tier});
  }
  std::vector<engine::Outcome> serial, parallel;
  const double ts = BestOf(repeats, [&] { serial = engine::RunItems(a, items, nlu::Execution::kSerial); });
  const double tp = BestOf(repeats, [&] { parallel = engine::RunItems(a, items, nlu::Execution::kParallel); });
  bool same = serial.size() == parallel.size();
  for (std::size_t i = 0; same && i < serial.size(); ++i) {
    same = serial[i].predicted_intent == parallel[i].predicted_intent &&
           serial[i].perfect == parallel[i].perfect && serial[i].word_errors == parallel[i].word_errors;
  }
  Row("eval", ts, tp, same);
}

nlu::SparseVector RandomFeatures(int features, std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> feat(0, features - 1);
  nlu::SparseVector x;
  for (int j = 0; j < 12; ++j) x.push_back({feat(rng), 1.0});
  return x;
}

void BenchGradient(std::size_t examples, int repeats) {
  std::mt19937_64 rng(3);
  const int classes = 20, features = 5000, labels = 9;
  std::uniform_int_distribution<int> cls(0, classes - 1), lab(0, labels - 1), len(3, 12);
  std::uniform_real_distribution<double> unit(-0.1, 0.1);

  std::vector<nlu::IntentExample> intents(examples);
  for (auto &e : intents) e = {RandomFeatures(features, rng), cls(rng)};
  std::vector<double> wi(static_cast<std::size_t>(classes) * features);
  for (auto &v : wi) v = unit(rng);
  nlu::GradientSum si(wi.size());
  std::vector<double> gs, gp;
  auto intent = [&](nlu::Execution e, std::vector<double> *g) {
    nlu::IntentObjective(wi, classes, features, intents, 1e-3, e, &si, g);
  };
  double ts = BestOf(repeats, [&] { intent(nlu::Execution::kSerial, &gs); });
  double tp = BestOf(repeats, [&] { intent(nlu::Execution::kParallel, &gp); });
  Row("intent gradient", ts, tp, gs == gp);

  std::vector<nlu::CrfSequence> seqs(examples);
  for (auto &s : seqs) {
    const int t = len(rng);
    for (int j = 0; j < t; ++j) {
      s.x.push_back(RandomFeatures(features, rng));
      s.y.push_back(lab(rng));
    }
  }
  std::vector<double> wc(static_cast<std::size_t>(labels) * features + labels * labels);
  for (auto &v : wc) v = unit(rng);
  nlu::GradientSum sc(wc.size());
  auto crf = [&](nlu::Execution e, std::vector<double> *g) {
    nlu::CrfObjective(wc, labels, features, seqs, 1e-3, e, &sc, g);
  };
  ts = BestOf(repeats, [&] { crf(nlu::Execution::kSerial, &gs); });
  tp = BestOf(repeats, [&] { crf(nlu::Execution::kParallel, &gp); });
  Row("crf gradient", ts, tp, gs == gp);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Serial vs OpenMP timings"};
  std::size_t utterances = 400, examples = 4000;
  int repeats = 3;
  app.add_option("--utterances", utterances, "utterances for the eval kernel");
  app.add_option("--examples", examples, "training examples for the gradient kernels");
  app.add_option("--repeats", repeats, "best of this many runs")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);
  std::printf("threads %d\n", omp_get_max_threads());
  BenchEval(utterances, repeats);
  BenchGradient(examples, repeats);
  return 0;
}
