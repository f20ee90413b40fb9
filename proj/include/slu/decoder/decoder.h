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

#ifndef SLU_DECODER_DECODER_H_
#define SLU_DECODER_DECODER_H_

#include <memory>
#include <string>
#include <vector>

#include "slu/decoder/posteriors.h"
#include "slu/wfst/fst.h"
#include "slu/wfst/lazy-compose.h"

namespace slu::decoder {

struct DecodeOptions {
  double beam = 16.0;
  // Distinct word sequences kept per state and returned.
  std::size_t nbest = 10;
  double acoustic_scale = 1.0;
};

// How graph output labels become words.
struct OutputMap {
  std::shared_ptr<const wfst::SymbolTable> words;
  // Output label -> word label; empty means identity.
  std::vector<wfst::Label> to_word;
};

struct Hypothesis {
  std::vector<std::string> words;
  // Negative log score: acoustic cost plus graph weight.
  double score = 0;
};

struct DecodeStats {
  std::size_t frames = 0;
  std::size_t max_active_states = 0;
  std::size_t arcs_visited = 0;
};

struct DecodeResult {
  // Ascending by score, distinct word sequences.
  std::vector<Hypothesis> nbest;
  DecodeStats stats;

  // No hypothesis survived pruning; not an error.
  bool Empty() const { return nbest.empty(); }
  const std::vector<std::string> &Best() const { return nbest.front().words; }
};

// Frame-synchronous token passing. Each frame extends the active tokens along
// arcs whose input label is a phone, at cost -acoustic_scale * ln(posterior)
// plus the arc weight, then closes over input-epsilon arcs. Tokens costlier
// than the frame's best plus the beam are dropped; the end of the utterance
// is pruned the same way with final weights included. Each state keeps up to
// nbest tokens with distinct word histories.
DecodeResult ViterbiDecode(const PosteriorMatrix &post, wfst::LazyComposeFst &graph,
                           const OutputMap &output, const DecodeOptions &options = {});
DecodeResult ViterbiDecode(const PosteriorMatrix &post, const wfst::Fst &graph,
                           const OutputMap &output, const DecodeOptions &options = {});

// Linear machine with one arc per (frame, phone) weighted by the scaled
// acoustic cost; composing it with a static graph gives the search space
// the decoder explores.
wfst::Fst PosteriorFst(const PosteriorMatrix &post, double acoustic_scale = 1.0);

}  // namespace slu::decoder

#endif  // SLU_DECODER_DECODER_H_
