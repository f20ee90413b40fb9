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

#include "slu/decoder/confusion.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "slu/base/errors.h"

namespace slu::decoder {
namespace {

// For every pivot position, the index of the aligned hypothesis word or -1
// for a deletion. Ties prefer match/substitution, then deletion.
std::vector<int> Align(const std::vector<std::string> &pivot, const std::vector<std::string> &hyp) {
  const std::size_t n = pivot.size(), m = hyp.size();
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      d[i][j] = std::min({d[i - 1][j - 1] + (pivot[i - 1] == hyp[j - 1] ? 0 : 1),
                          d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  }
  std::vector<int> aligned(n, -1);
  std::size_t i = n, j = m;
  while (i > 0) {
    if (j > 0 && d[i][j] == d[i - 1][j - 1] + (pivot[i - 1] == hyp[j - 1] ? 0 : 1)) {
      aligned[i - 1] = static_cast<int>(j - 1);
      --i;
      --j;
    } else if (d[i][j] == d[i - 1][j] + 1) {
      --i;
    } else {
      --j;
    }
  }
  return aligned;
}

}  // namespace

ConfusionNetwork ToConfusionNetwork(const DecodeResult &result) {
  if (result.Empty()) throw ParameterError("confusion network of an empty decode");
  const auto &hyps = result.nbest;
  std::vector<double> posterior(hyps.size());
  double total = 0;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    total += posterior[i] = std::exp(hyps[0].score - hyps[i].score);
  }
  for (auto &p : posterior) p /= total;

  const auto &pivot = hyps[0].words;
  std::vector<std::map<std::string, double>> mass(pivot.size());
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    auto aligned = Align(pivot, hyps[i].words);
    for (std::size_t b = 0; b < pivot.size(); ++b) {
      mass[b][aligned[b] < 0 ? std::string(kEpsilonWord) : hyps[i].words[aligned[b]]] +=
          posterior[i];
    }
  }
  ConfusionNetwork cn;
  for (const auto &bin : mass) {
    std::vector<CnEntry> entries;
    for (const auto &[w, p] : bin) entries.push_back({w, p});
    std::stable_sort(entries.begin(), entries.end(),
                     [](const CnEntry &a, const CnEntry &b) { return a.posterior > b.posterior; });
    cn.bins.push_back(std::move(entries));
  }
  return cn;
}

TaggedTranscript TagOov(const ConfusionNetwork &cn, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ParameterError("OOV threshold must lie in [0, 1]");
  }
  TaggedTranscript out;
  for (const auto &bin : cn.bins) {
    for (const auto &e : bin) {
      if (e.word == kEpsilonWord) continue;
      out.push_back({e.word, e.posterior, e.posterior < threshold});
      break;
    }
  }
  return out;
}

}  // namespace slu::decoder
