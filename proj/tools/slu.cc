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

// Command-line front end: train, parse, inject, eval and bench.
//
// Exit codes: 0 success, 2 invalid input (schema, format, bad arguments),
// 3 parse produced the none result, 4 internal error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slu/base/errors.h"
#include "slu/decoder/posteriors.h"
#include "slu/engine/assistant.h"
#include "slu/engine/bench.h"
#include "slu/engine/evaluate.h"
#include "slu/grammar/dataset.h"
#include "slu/grammar/text.h"

namespace {

using namespace slu;

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kDecodeEmpty = 3;
constexpr int kInternal = 4;

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error("cannot write " + path);
}

struct TrainArgs {
  std::string dataset, out, config;
  std::uint64_t seed = 0;
};

int Train(const TrainArgs &a) {
  engine::EngineConfig config;
  if (!a.config.empty()) config = engine::EngineConfig::FromJson(ReadFile(a.config));
  config.seed = a.seed;
  const auto dataset = grammar::LoadDataset(a.dataset);
  const auto assistant = engine::Assistant::Train(dataset, config);
  assistant.Save(a.out);
  std::cout << "wrote " << a.out << " (" << assistant.ToBytes().size() << " bytes, "
            << assistant.Intents().size() << " intents)\n";
  return kOk;
}

struct ParseArgs {
  std::string bundle, posteriors, text;
  double noise = 0;
  std::uint64_t seed = 0;
};

int Parse(const ParseArgs &a) {
  const auto assistant = engine::Assistant::Load(a.bundle);
  decoder::PosteriorMatrix post;
  if (!a.posteriors.empty()) {
    std::ifstream in(a.posteriors);
    if (!in) throw SchemaError("cannot read " + a.posteriors);
    post = decoder::ReadPosteriors(in);
  } else {
    post = assistant.Simulate(grammar::Normalize(a.text, assistant.Config().normalizer), a.noise,
                              a.seed);
  }
  const auto result = assistant.Parse(post);
  std::cout << engine::ResultToJson(result) << "\n";
  return result.IsNone() ? kDecodeEmpty : kOk;
}

struct InjectArgs {
  std::string bundle, slot, values, out;
};

int Inject(const InjectArgs &a) {
  const auto assistant = engine::Assistant::Load(a.bundle);
  std::vector<std::string> values;
  std::istringstream lines(ReadFile(a.values));
  for (std::string line; std::getline(lines, line);) {
    if (!line.empty()) values.push_back(line);
  }
  assistant.Inject(a.slot, values).Save(a.out);
  std::cout << "injected " << values.size() << " values into " << a.slot << ", wrote " << a.out
            << "\n";
  return kOk;
}

struct EvalArgs {
  std::string bundle, testset, report;
  std::optional<double> noise;
  bool serial = false;
};

int Eval(const EvalArgs &a) {
  const auto assistant = engine::Assistant::Load(a.bundle);
  auto items = engine::ParseTestSet(ReadFile(a.testset), assistant.Config().normalizer);
  if (a.noise) {
    for (auto &item : items) item.noise = *a.noise;
  }
  engine::EvalOptions options;
  if (a.serial) options.execution = nlu::Execution::kSerial;
  const auto report = engine::Evaluate(assistant, items, options);
  if (!a.report.empty()) WriteFile(a.report, engine::ReportToJson(report) + "\n");
  std::cout << "utterances " << report.utterances << "  macro_f1 " << report.macro_f1
            << "  perfect_parse " << report.perfect_parse << "  wer " << report.wer << "  rtf "
            << report.real_time_factor << "\n";
  return kOk;
}

struct BenchArgs {
  std::string bundle, report;
  engine::BenchOptions options;
  bool no_static = false;
};

int Bench(BenchArgs a) {
  const auto assistant = engine::Assistant::Load(a.bundle);
  a.options.static_composition = !a.no_static;
  const auto report = engine::Bench(assistant, a.options);
  const std::string json = engine::BenchToJson(report);
  if (engine::BenchFromJson(json) != report) throw Error("bench report does not round-trip");
  if (!a.report.empty()) WriteFile(a.report, json + "\n");
  std::cout << json << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Embedded spoken language understanding engine"};
  app.require_subcommand(1);

  TrainArgs train;
  auto *train_cmd = app.add_subcommand("train", "Train an assistant bundle from a dataset");
  train_cmd->add_option("--dataset", train.dataset, "Dataset JSON")->required();
  train_cmd->add_option("--out", train.out, "Output bundle")->required();
  train_cmd->add_option("--seed", train.seed, "Seed");
  train_cmd->add_option("--config", train.config, "Engine configuration JSON");

  ParseArgs parse;
  auto *parse_cmd = app.add_subcommand("parse", "Decode and parse one utterance");
  parse_cmd->add_option("--bundle", parse.bundle, "Bundle")->required();
  auto *post_opt = parse_cmd->add_option("--posteriors", parse.posteriors, "Posterior matrix file");
  auto *text_opt = parse_cmd->add_option("--text", parse.text, "Text to simulate");
  post_opt->excludes(text_opt);
  parse_cmd->add_option("--noise", parse.noise, "Simulator noise in [0, 1)")->needs(text_opt);
  parse_cmd->add_option("--seed", parse.seed, "Simulator seed")->needs(text_opt);
  parse_cmd->callback([&] {
    if (parse.posteriors.empty() && text_opt->count() == 0) {
      throw CLI::RequiredError("--posteriors or --text");
    }
  });

  InjectArgs inject;
  auto *inject_cmd = app.add_subcommand("inject", "Add values to a gazetteer slot");
  inject_cmd->add_option("--bundle", inject.bundle, "Bundle")->required();
  inject_cmd->add_option("--slot", inject.slot, "Slot name")->required();
  inject_cmd->add_option("--values", inject.values, "File with one value per line")->required();
  inject_cmd->add_option("--out", inject.out, "Output bundle")->required();

  EvalArgs eval;
  auto *eval_cmd = app.add_subcommand("eval", "Evaluate a bundle on a test set");
  eval_cmd->add_option("--bundle", eval.bundle, "Bundle")->required();
  eval_cmd->add_option("--testset", eval.testset, "Test set JSON")->required();
  eval_cmd->add_option("--noise", eval.noise, "Override the noise of every item");
  eval_cmd->add_option("--report", eval.report, "Report JSON output");
  eval_cmd->add_flag("--serial", eval.serial, "Single-threaded evaluation");

  BenchArgs bench;
  auto *bench_cmd = app.add_subcommand("bench", "Decoding speed and graph size");
  bench_cmd->add_option("--bundle", bench.bundle, "Bundle")->required();
  bench_cmd->add_option("--utterances", bench.options.utterances, "Sampled utterances");
  bench_cmd->add_option("--noise", bench.options.noise, "Simulator noise");
  bench_cmd->add_option("--seed", bench.options.seed, "Sampling seed");
  bench_cmd->add_option("--report", bench.report, "Report JSON output");
  bench_cmd->add_flag("--no-static", bench.no_static, "Skip the static composition");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*train_cmd) return Train(train);
    if (*parse_cmd) return Parse(parse);
    if (*inject_cmd) return Inject(inject);
    if (*eval_cmd) return Eval(eval);
    if (*bench_cmd) return Bench(bench);
  } catch (const SchemaError &e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError &e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kInputError;
  } catch (const AnnotationError &e) {
    std::cerr << "annotation error: " << e.what() << "\n";
    return kInputError;
  } catch (const DefinitionError &e) {
    std::cerr << "definition error: " << e.what() << "\n";
    return kInputError;
  } catch (const UnsupportedInjectionError &e) {
    std::cerr << "injection error: " << e.what() << "\n";
    return kInputError;
  } catch (const G2pError &e) {
    std::cerr << "pronunciation error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParameterError &e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
