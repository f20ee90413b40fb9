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

#ifndef SLU_DECODER_CONFUSION_H_
#define SLU_DECODER_CONFUSION_H_

#include <string>
#include <vector>

#include "slu/decoder/decoder.h"

namespace slu::decoder {

inline constexpr char kEpsilonWord[] = "<eps>";
inline constexpr double kDefaultOovThreshold = 0.2;

struct CnEntry {
  std::string word;
  double posterior = 0;
};

// One bin per word of the best hypothesis; entries sorted by descending
// posterior, then by word.
struct ConfusionNetwork {
  std::vector<std::vector<CnEntry>> bins;
};

// Hypothesis posteriors are a softmax over negated scores. Every hypothesis
// is aligned to the best one by edit distance; a pivot word it deletes puts
// its mass on <eps>, words it inserts are not represented.
ConfusionNetwork ToConfusionNetwork(const DecodeResult &result);

struct TaggedToken {
  std::string word;
  double posterior = 0;
  bool unknown = false;
};

using TaggedTranscript = std::vector<TaggedToken>;

// Best non-<eps> word of each bin, unknown when its posterior is below the
// threshold.
TaggedTranscript TagOov(const ConfusionNetwork &cn, double threshold = kDefaultOovThreshold);

}  // namespace slu::decoder

#endif  // SLU_DECODER_CONFUSION_H_
