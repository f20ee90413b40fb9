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

#include "slu/nlu/features.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "slu/base/errors.h"

namespace slu::nlu {

int FeatureTable::Intern(const std::string &name) {
  auto [it, inserted] = index_.emplace(name, static_cast<int>(names_.size()));
  if (inserted) names_.push_back(name);
  return it->second;
}

int FeatureTable::Find(const std::string &name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

SparseVector FeatureTable::Vectorize(const std::vector<std::string> &names) {
  std::map<int, double> acc;
  for (const auto &n : names) acc[Intern(n)] += 1.0;
  return {acc.begin(), acc.end()};
}

SparseVector FeatureTable::Lookup(const std::vector<std::string> &names) const {
  std::map<int, double> acc;
  for (const auto &n : names) {
    int id = Find(n);
    if (id >= 0) acc[id] += 1.0;
  }
  return {acc.begin(), acc.end()};
}

int ClusterMap::Cluster(const std::string &word) const {
  auto it = clusters_.find(word);
  return it == clusters_.end() ? kFallback : it->second;
}

int ClusterMap::NumClusters() const {
  std::set<int> ids;
  for (const auto &[w, c] : clusters_) ids.insert(c);
  return static_cast<int>(ids.size());
}

ClusterMap ReadClusters(std::istream &in) {
  ClusterMap out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) throw ParseError("expected word<TAB>cluster", number);
    try {
      std::size_t used = 0;
      int id = std::stoi(line.substr(tab + 1), &used);
      if (used != line.size() - tab - 1 || id < 0) throw std::invalid_argument("id");
      out.Set(line.substr(0, tab), id);
    } catch (const std::logic_error &) {
      throw ParseError("invalid cluster id", number);
    }
  }
  return out;
}

void WriteClusters(const ClusterMap &clusters, std::ostream &out) {
  for (const auto &[w, c] : clusters.Entries()) out << w << '\t' << c << '\n';
}

ClusterMap InduceClusters(const std::vector<Tokens> &corpus, int k) {
  std::map<std::string, int> vocab;
  for (const auto &sentence : corpus) {
    for (const auto &w : sentence) vocab.emplace(w, 0);
  }
  const int v = static_cast<int>(vocab.size());
  if (k < 1 || k > v) {
    throw ParameterError("cluster count " + std::to_string(k) + " outside [1, " +
                         std::to_string(v) + "]");
  }
  int next = 0;
  for (auto &[w, id] : vocab) id = next++;
  // Context columns: left neighbours, then right neighbours; index v is the
  // sentence boundary on either side.
  const int dim = 2 * (v + 1);
  std::vector<std::vector<double>> desc(v, std::vector<double>(dim, 0.0));
  for (const auto &sentence : corpus) {
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      int w = vocab.at(sentence[i]);
      int left = i == 0 ? v : vocab.at(sentence[i - 1]);
      int right = i + 1 == sentence.size() ? v : vocab.at(sentence[i + 1]);
      desc[w][left] += 1;
      desc[w][v + 1 + right] += 1;
    }
  }
  auto cosine = [&](int a, int b) {
    double dot = 0, na = 0, nb = 0;
    for (int j = 0; j < dim; ++j) {
      dot += desc[a][j] * desc[b][j];
      na += desc[a][j] * desc[a][j];
      nb += desc[b][j] * desc[b][j];
    }
    return na > 0 && nb > 0 ? dot / std::sqrt(na * nb) : 0.0;
  };
  std::vector<int> owner(v);
  for (int i = 0; i < v; ++i) owner[i] = i;
  std::vector<char> alive(v, 1);
  std::vector<std::vector<double>> sim(v, std::vector<double>(v, 0.0));
  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b) sim[a][b] = cosine(a, b);
  }
  for (int clusters = v; clusters > k; --clusters) {
    int best_a = -1, best_b = -1;
    double best = -1;
    for (int a = 0; a < v; ++a) {
      if (!alive[a]) continue;
      for (int b = a + 1; b < v; ++b) {
        if (alive[b] && sim[a][b] > best) {
          best = sim[a][b];
          best_a = a;
          best_b = b;
        }
      }
    }
    for (int j = 0; j < dim; ++j) desc[best_a][j] += desc[best_b][j];
    alive[best_b] = 0;
    for (auto &o : owner) {
      if (o == best_b) o = best_a;
    }
    for (int c = 0; c < v; ++c) {
      if (!alive[c] || c == best_a) continue;
      double s = cosine(best_a, c);
      (c < best_a ? sim[c][best_a] : sim[best_a][c]) = s;
    }
  }
  ClusterMap out;
  std::map<int, int> renumber;
  for (const auto &[w, id] : vocab) {
    auto [it, inserted] = renumber.emplace(owner[id], static_cast<int>(renumber.size()));
    out.Set(w, it->second);
  }
  return out;
}

void GazetteerParser::Add(const Tokens &value) {
  if (value.empty()) return;
  int node = 0;
  for (const auto &t : value) {
    auto it = nodes_[node].next.find(t);
    if (it == nodes_[node].next.end()) {
      it = nodes_[node].next.emplace(t, static_cast<int>(nodes_.size())).first;
      nodes_.emplace_back();
    }
    node = it->second;
  }
  if (!nodes_[node].full) {
    nodes_[node].full = true;
    ++num_values_;
  }
}

bool GazetteerParser::Contains(const Tokens &value) const {
  int node = 0;
  for (const auto &t : value) {
    auto it = nodes_[node].next.find(t);
    if (it == nodes_[node].next.end()) return false;
    node = it->second;
  }
  return nodes_[node].full && !value.empty();
}

std::vector<Tokens> GazetteerParser::Values() const {
  std::vector<Tokens> out;
  Tokens prefix;
  auto walk = [&](auto &&self, int node) -> void {
    if (nodes_[node].full) out.push_back(prefix);
    for (const auto &[t, child] : nodes_[node].next) {
      prefix.push_back(t);
      self(self, child);
      prefix.pop_back();
    }
  };
  walk(walk, 0);
  return out;
}

std::vector<GazetteerMatch> GazetteerParser::MatchSpans(const Tokens &tokens) const {
  std::vector<GazetteerMatch> out;
  std::size_t s = 0;
  while (s < tokens.size()) {
    int node = 0;
    std::size_t full_end = 0, walk_end = 0;  // exclusive ends, 0 = none
    for (std::size_t e = s; e < tokens.size(); ++e) {
      auto it = nodes_[node].next.find(tokens[e]);
      if (it == nodes_[node].next.end()) break;
      node = it->second;
      walk_end = e + 1;
      if (nodes_[node].full) full_end = e + 1;
    }
    if (full_end > 0) {
      out.push_back({s, full_end, MatchKind::kFull});
      s = full_end;
    } else if (walk_end > 0) {
      out.push_back({s, walk_end, MatchKind::kPartial});
      s = walk_end;
    } else {
      ++s;
    }
  }
  return out;
}

std::vector<MatchKind> GazetteerParser::Match(const Tokens &tokens) const {
  std::vector<MatchKind> out(tokens.size(), MatchKind::kNone);
  for (const auto &m : MatchSpans(tokens)) {
    std::fill(out.begin() + m.begin, out.begin() + m.end, m.kind);
  }
  return out;
}

GazetteerParser AugmentGazetteer(const GazetteerParser &parser, const std::vector<Tokens> &values) {
  GazetteerParser out = parser;
  for (const auto &v : values) out.Add(v);
  return out;
}

namespace {

struct PositionMatch {
  MatchKind kind = MatchKind::kNone;
  bool begin = false;
};

std::vector<std::vector<PositionMatch>> ScanGazetteers(
    const Tokens &tokens, const std::vector<GazetteerParser> &gazetteers) {
  std::vector<std::vector<PositionMatch>> out;
  for (const auto &g : gazetteers) {
    auto &row = out.emplace_back(tokens.size());
    for (const auto &m : g.MatchSpans(tokens)) {
      for (std::size_t i = m.begin; i < m.end; ++i) row[i] = {m.kind, i == m.begin};
    }
  }
  return out;
}

std::string ClusterName(int c) { return c == ClusterMap::kFallback ? "?" : std::to_string(c); }

void PositionFeatures(const Tokens &tokens, std::size_t i, const ClusterMap &clusters,
                      const std::vector<GazetteerParser> &gazetteers,
                      const std::vector<std::vector<PositionMatch>> &matches,
                      const FeatureOptions &options, std::vector<std::string> *out) {
  const long n = static_cast<long>(tokens.size());
  const long p = static_cast<long>(i);
  for (long d = -options.window; d <= options.window; ++d) {
    if (p + d < 0 || p + d >= n) continue;
    const std::string tag = "[" + std::to_string(d) + "]=";
    out->push_back("w" + tag + tokens[p + d]);
    if (options.clusters) out->push_back("c" + tag + ClusterName(clusters.Cluster(tokens[p + d])));
  }
  const std::string &w = tokens[i];
  for (int a = 1; a <= options.max_affix && a <= static_cast<int>(w.size()); ++a) {
    out->push_back("p" + std::to_string(a) + "=" + w.substr(0, a));
    out->push_back("s" + std::to_string(a) + "=" + w.substr(w.size() - a));
  }
  if (i == 0) out->push_back("bos");
  if (p == n - 1) out->push_back("eos");
  if (options.gazetteers) {
    for (std::size_t g = 0; g < gazetteers.size(); ++g) {
      const PositionMatch &m = matches[g][i];
      if (m.kind == MatchKind::kNone) continue;
      const std::string name =
          "g:" + gazetteers[g].Slot() + (m.kind == MatchKind::kFull ? "=full" : "=partial");
      out->push_back(name);
      out->push_back(name + (m.begin ? "@begin" : "@inside"));
    }
  }
}

}  // namespace

std::vector<std::string> Featurize(const Tokens &tokens, std::size_t position,
                                   const ClusterMap &clusters,
                                   const std::vector<GazetteerParser> &gazetteers,
                                   const FeatureOptions &options) {
  if (position >= tokens.size()) throw ParameterError("feature position out of range");
  const auto matches = ScanGazetteers(tokens, gazetteers);
  std::vector<std::string> out;
  PositionFeatures(tokens, position, clusters, gazetteers, matches, options, &out);
  return out;
}

std::vector<std::vector<std::string>> FeaturizeSequence(
    const Tokens &tokens, const ClusterMap &clusters,
    const std::vector<GazetteerParser> &gazetteers, const FeatureOptions &options) {
  const auto matches = ScanGazetteers(tokens, gazetteers);
  std::vector<std::vector<std::string>> out(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    PositionFeatures(tokens, i, clusters, gazetteers, matches, options, &out[i]);
  }
  return out;
}

std::vector<std::string> UtteranceFeatures(const Tokens &tokens, const ClusterMap &clusters,
                                           const std::vector<GazetteerParser> &gazetteers,
                                           bool use_clusters, bool use_gazetteers) {
  std::set<std::string> names{"bias"};
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    names.insert("u=" + tokens[i]);
    names.insert("b=" + (i ? tokens[i - 1] : std::string("<s>")) + "|" + tokens[i]);
    if (use_clusters) names.insert("c=" + ClusterName(clusters.Cluster(tokens[i])));
  }
  names.insert("b=" + (tokens.empty() ? std::string("<s>") : tokens.back()) + "|</s>");
  if (use_gazetteers) {
    for (const auto &g : gazetteers) {
      for (auto m : g.Match(tokens)) {
        if (m == MatchKind::kFull) names.insert("g:" + g.Slot() + "=full");
        if (m == MatchKind::kPartial) names.insert("g:" + g.Slot() + "=partial");
      }
    }
  }
  return {names.begin(), names.end()};
}

}  // namespace slu::nlu
