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

#ifndef SLU_ENGINE_BENCH_H_
#define SLU_ENGINE_BENCH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "slu/engine/assistant.h"

namespace slu::engine {

struct BenchOptions {
  std::size_t utterances = 200;
  double noise = 0.1;
  std::uint64_t seed = 0;
  double frames_per_second = 100.0;
  // Also build HCL o G eagerly to report its size.
  bool static_composition = true;
};

struct BenchReport {
  std::size_t utterances = 0;
  std::size_t frames = 0;
  double audio_seconds = 0;
  double decode_seconds = 0;
  double real_time_factor = 0;
  // States of the lazy graph expanded by one session over the workload.
  std::size_t expanded_states = 0;
  // 0 when the static composition was skipped.
  std::size_t static_states = 0;
  std::size_t static_arcs = 0;
  std::size_t bundle_bytes = 0;
  friend bool operator==(const BenchReport &, const BenchReport &) = default;
};

// Word sequences drawn from the language model by a weighted random walk
// over G. Walks longer than max_words are redrawn.
std::vector<std::vector<std::string>> SampleSentences(const Assistant &assistant, std::size_t n,
                                                      std::uint64_t seed,
                                                      std::size_t max_words = 30);

BenchReport Bench(const Assistant &assistant, const BenchOptions &options = {});

std::string BenchToJson(const BenchReport &report);
BenchReport BenchFromJson(const std::string &json);

}  // namespace slu::engine

#endif  // SLU_ENGINE_BENCH_H_
