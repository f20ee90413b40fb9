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

#ifndef SLU_NLU_FEATURES_H_
#define SLU_NLU_FEATURES_H_

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "slu/grammar/text.h"

namespace slu::nlu {

using grammar::Tokens;

// Token passed to the NLU in place of a word tagged unknown by the decoder.
inline constexpr char kUnknownToken[] = "<unk>";

// Sparse vector as (feature id, value) pairs sorted by id.
using SparseVector = std::vector<std::pair<int, double>>;

class FeatureTable {
 public:
  int Intern(const std::string &name);
  // -1 when absent.
  int Find(const std::string &name) const;
  int Size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string> &Names() const { return names_; }

  // Interns unknown names. Duplicates are summed.
  SparseVector Vectorize(const std::vector<std::string> &names);
  // Skips unknown names.
  SparseVector Lookup(const std::vector<std::string> &names) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

// Word -> cluster id; words without a cluster fall back to kFallback.
class ClusterMap {
 public:
  static constexpr int kFallback = -1;

  void Set(const std::string &word, int cluster) { clusters_[word] = cluster; }
  int Cluster(const std::string &word) const;
  std::size_t Size() const { return clusters_.size(); }
  int NumClusters() const;
  const std::map<std::string, int> &Entries() const { return clusters_; }

  friend bool operator==(const ClusterMap &, const ClusterMap &) = default;

 private:
  std::map<std::string, int> clusters_;
};

// "word<TAB>cluster-id" per line.
ClusterMap ReadClusters(std::istream &in);
void WriteClusters(const ClusterMap &clusters, std::ostream &out);

// Agglomerative clustering of the corpus vocabulary into k clusters. Each
// word is described by counts of its left and right neighbours; the two
// clusters with the most similar (cosine) summed descriptions are merged
// until k remain, ties going to the lowest cluster indices. Cluster ids are
// renumbered by first occurrence in sorted vocabulary order.
ClusterMap InduceClusters(const std::vector<Tokens> &corpus, int k);

enum class MatchKind { kNone = 0, kPartial = 1, kFull = 2 };

struct GazetteerMatch {
  std::size_t begin = 0;
  std::size_t end = 0;
  MatchKind kind = MatchKind::kNone;
  friend bool operator==(const GazetteerMatch &, const GazetteerMatch &) = default;
};

// Token trie over the values of one slot.
class GazetteerParser {
 public:
  GazetteerParser() = default;
  explicit GazetteerParser(std::string slot) : slot_(std::move(slot)) {}

  const std::string &Slot() const { return slot_; }
  void Add(const Tokens &value);
  bool Contains(const Tokens &value) const;
  std::size_t NumValues() const { return num_values_; }
  std::vector<Tokens> Values() const;

  // Leftmost-longest scan: from each start, the longest full match wins,
  // otherwise the longest walk along value prefixes is a partial match.
  std::vector<MatchKind> Match(const Tokens &tokens) const;
  // The same scan as spans, in order.
  std::vector<GazetteerMatch> MatchSpans(const Tokens &tokens) const;

  friend bool operator==(const GazetteerParser &a, const GazetteerParser &b) {
    return a.slot_ == b.slot_ && a.Values() == b.Values();
  }

 private:
  struct Node {
    std::map<std::string, int> next;
    bool full = false;
  };
  std::string slot_;
  std::vector<Node> nodes_{Node{}};
  std::size_t num_values_ = 0;
};

GazetteerParser AugmentGazetteer(const GazetteerParser &parser, const std::vector<Tokens> &values);

struct FeatureOptions {
  int window = 2;
  int max_affix = 3;
  bool clusters = true;
  bool gazetteers = true;
};

// Features of one position: words and clusters in a window, prefixes and
// suffixes, gazetteer flags (with the position inside the match) and
// sentence-boundary indicators.
std::vector<std::string> Featurize(const Tokens &tokens, std::size_t position,
                                   const ClusterMap &clusters,
                                   const std::vector<GazetteerParser> &gazetteers,
                                   const FeatureOptions &options = {});

// Featurize for every position, sharing the gazetteer scans.
std::vector<std::vector<std::string>> FeaturizeSequence(
    const Tokens &tokens, const ClusterMap &clusters,
    const std::vector<GazetteerParser> &gazetteers, const FeatureOptions &options = {});

// Bag of features of a whole utterance for intent classification: bias,
// words, bigrams, clusters and (optionally) gazetteer flags.
std::vector<std::string> UtteranceFeatures(const Tokens &tokens, const ClusterMap &clusters,
                                           const std::vector<GazetteerParser> &gazetteers,
                                           bool use_clusters, bool use_gazetteers);

}  // namespace slu::nlu

#endif  // SLU_NLU_FEATURES_H_
