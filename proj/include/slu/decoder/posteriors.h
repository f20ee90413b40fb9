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

#ifndef SLU_DECODER_POSTERIORS_H_
#define SLU_DECODER_POSTERIORS_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "slu/lexicon/lexicon.h"

namespace slu::decoder {

// T rows of phone posteriors; column j belongs to phone label j + 1.
class PosteriorMatrix {
 public:
  PosteriorMatrix() = default;
  PosteriorMatrix(std::size_t frames, std::size_t phones)
      : frames_(frames), phones_(phones), data_(frames * phones, 0.0) {}

  std::size_t NumFrames() const { return frames_; }
  std::size_t NumPhones() const { return phones_; }
  double &At(std::size_t t, std::size_t j) { return data_[t * phones_ + j]; }
  double At(std::size_t t, std::size_t j) const { return data_[t * phones_ + j]; }
  const double *Row(std::size_t t) const { return data_.data() + t * phones_; }

  // Throws ParameterError unless every entry is finite and non-negative and
  // every row sums to 1 within `delta`.
  void Validate(double delta = 1e-9) const;

  friend bool operator==(const PosteriorMatrix &, const PosteriorMatrix &) = default;

 private:
  std::size_t frames_ = 0;
  std::size_t phones_ = 0;
  std::vector<double> data_;
};

// Header "T P", then T rows of P reals.
PosteriorMatrix ReadPosteriors(std::istream &in);
void WritePosteriors(const PosteriorMatrix &post, std::ostream &out);

struct SimulatorOptions {
  int frames_per_phone = 3;
  // Probability mass moved away from the spoken phone.
  double noise = 0.0;
  std::uint64_t seed = 0;
  // Every frame spreads the noise mass over all phones with weights drawn
  // from a symmetric Dirichlet of this concentration.
  double concentration = 1.0;
};

// Phone sequence spoken for `words`: the first pronunciation of each word in
// the lexicon, G2P otherwise.
std::vector<std::string> SpokenPhones(const std::vector<std::string> &words,
                                      const lexicon::C1PLexicon &lexicon,
                                      const lexicon::Lexicon &overrides = {});

// Emission simulator standing in for an acoustic model.
PosteriorMatrix SimulatePosteriors(const std::vector<std::string> &words,
                                   const lexicon::C1PLexicon &lexicon,
                                   const lexicon::PhoneSet &phones,
                                   const SimulatorOptions &options = {},
                                   const lexicon::Lexicon &overrides = {});

}  // namespace slu::decoder

#endif  // SLU_DECODER_POSTERIORS_H_
