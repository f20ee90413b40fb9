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

#include "slu/decoder/posteriors.h"

#include <cmath>
#include <random>

#include "slu/base/errors.h"

namespace slu::decoder {
namespace {

// Uniform in (0, 1] from raw engine bits, identical on every platform.
double Uniform(std::mt19937_64 &rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// Marsaglia-Tsang gamma sampler built on Uniform.
double Gamma(std::mt19937_64 &rng, double shape) {
  if (shape < 1.0) return Gamma(rng, shape + 1.0) * std::pow(Uniform(rng), 1.0 / shape);
  const double d = shape - 1.0 / 3.0, c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      // Box-Muller normal.
      x = std::sqrt(-2.0 * std::log(Uniform(rng))) * std::cos(2.0 * M_PI * Uniform(rng));
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    double u = Uniform(rng);
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
  }
}

}  // namespace

void PosteriorMatrix::Validate(double delta) const {
  for (std::size_t t = 0; t < frames_; ++t) {
    double sum = 0;
    for (std::size_t j = 0; j < phones_; ++j) {
      double p = At(t, j);
      if (!std::isfinite(p) || p < 0) {
        throw ParameterError("posterior row " + std::to_string(t) + " has an invalid entry");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > delta) {
      throw ParameterError("posterior row " + std::to_string(t) + " sums to " +
                           std::to_string(sum));
    }
  }
}

PosteriorMatrix ReadPosteriors(std::istream &in) {
  long frames = -1, phones = -1;
  if (!(in >> frames >> phones) || frames < 0 || phones <= 0) {
    throw ParseError("expected header 'T P'", 1);
  }
  PosteriorMatrix post(static_cast<std::size_t>(frames), static_cast<std::size_t>(phones));
  for (std::size_t t = 0; t < post.NumFrames(); ++t) {
    for (std::size_t j = 0; j < post.NumPhones(); ++j) {
      if (!(in >> post.At(t, j))) throw ParseError("truncated posterior row", t + 2);
    }
  }
  std::string extra;
  if (in >> extra) throw ParseError("trailing data after posterior rows", post.NumFrames() + 2);
  post.Validate(1e-6);
  return post;
}

void WritePosteriors(const PosteriorMatrix &post, std::ostream &out) {
  auto precision = out.precision(17);
  out << post.NumFrames() << ' ' << post.NumPhones() << '\n';
  for (std::size_t t = 0; t < post.NumFrames(); ++t) {
    for (std::size_t j = 0; j < post.NumPhones(); ++j) {
      out << (j ? " " : "") << post.At(t, j);
    }
    out << '\n';
  }
  out.precision(precision);
}

std::vector<std::string> SpokenPhones(const std::vector<std::string> &words,
                                      const lexicon::C1PLexicon &lexicon,
                                      const lexicon::Lexicon &overrides) {
  std::vector<std::string> phones;
  for (const auto &w : words) {
    auto prons = lexicon.Pronunciations(w);
    const lexicon::Pronunciation pron =
        prons.empty() ? lexicon::G2p(w, overrides).front() : prons.front();
    phones.insert(phones.end(), pron.begin(), pron.end());
  }
  return phones;
}

PosteriorMatrix SimulatePosteriors(const std::vector<std::string> &words,
                                   const lexicon::C1PLexicon &lexicon,
                                   const lexicon::PhoneSet &phones,
                                   const SimulatorOptions &options,
                                   const lexicon::Lexicon &overrides) {
  if (options.frames_per_phone < 1) throw ParameterError("frames_per_phone must be positive");
  if (!(options.noise >= 0.0 && options.noise < 1.0)) {
    throw ParameterError("noise must lie in [0, 1)");
  }
  if (!(options.concentration > 0.0)) throw ParameterError("concentration must be positive");
  const auto spoken = SpokenPhones(words, lexicon, overrides);
  const std::size_t num = static_cast<std::size_t>(phones.Size());
  PosteriorMatrix post(spoken.size() * options.frames_per_phone, num);
  std::mt19937_64 rng(options.seed);
  std::vector<double> spread(num);
  std::size_t t = 0;
  for (const auto &p : spoken) {
    wfst::Label label = phones.Find(p);
    if (label == wfst::kNoLabel || label == wfst::kEpsilon) {
      throw G2pError("phone '" + p + "' is not in the phone set");
    }
    for (int f = 0; f < options.frames_per_phone; ++f, ++t) {
      if (options.noise > 0) {
        double total = 0;
        for (auto &x : spread) total += x = Gamma(rng, options.concentration);
        for (std::size_t j = 0; j < num; ++j) post.At(t, j) = options.noise * spread[j] / total;
      }
      post.At(t, label - 1) += 1.0 - options.noise;
    }
  }
  return post;
}

}  // namespace slu::decoder
