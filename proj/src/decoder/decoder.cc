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

#include "slu/decoder/decoder.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>

#include "slu/base/errors.h"

namespace slu::decoder {
namespace {

using wfst::Label;
using wfst::StateId;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Token {
  double cost;
  std::int32_t history;
};

// Word histories as a trie; node 0 is the empty history.
class Histories {
 public:
  std::int32_t Extend(std::int32_t node, Label word) {
    std::uint64_t key = (static_cast<std::uint64_t>(node) << 32) | static_cast<std::uint32_t>(word);
    auto [it, inserted] = child_.emplace(key, static_cast<std::int32_t>(parent_.size()));
    if (inserted) {
      parent_.push_back(node);
      word_.push_back(word);
    }
    return it->second;
  }
  std::vector<Label> Words(std::int32_t node) const {
    std::vector<Label> out;
    for (; node > 0; node = parent_[node]) out.push_back(word_[node]);
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<std::int32_t> parent_{-1};
  std::vector<Label> word_{wfst::kEpsilon};
  std::unordered_map<std::uint64_t, std::int32_t> child_;
};

class ActiveSet {
 public:
  explicit ActiveSet(std::size_t k) : k_(k) {}

  std::size_t Size() const { return states_.size(); }
  StateId State(std::size_t i) const { return states_[i]; }
  const std::vector<Token> &Tokens(std::size_t i) const { return tokens_[i]; }
  std::size_t IndexOf(StateId s) const { return index_.at(s); }

  // True when the token list of `s` changed.
  bool Insert(StateId s, double cost, std::int32_t history) {
    auto [it, inserted] = index_.emplace(s, states_.size());
    if (inserted) {
      states_.push_back(s);
      tokens_.push_back({});
    }
    auto &list = tokens_[it->second];
    best_ = std::min(best_, cost);
    for (auto &t : list) {
      if (t.history != history) continue;
      if (cost >= t.cost) return false;
      t.cost = cost;
      return true;
    }
    if (list.size() < k_) {
      list.push_back({cost, history});
      return true;
    }
    auto worst = std::max_element(list.begin(), list.end(),
                                  [](const Token &a, const Token &b) { return a.cost < b.cost; });
    if (cost >= worst->cost) return false;
    *worst = {cost, history};
    return true;
  }

  double Best() const { return best_; }

 private:
  std::size_t k_;
  std::vector<StateId> states_;
  std::vector<std::vector<Token>> tokens_;
  std::unordered_map<StateId, std::size_t> index_;
  double best_ = kInf;
};

template <class Graph>
std::span<const wfst::Arc> ArcsOf(Graph &g, StateId s) {
  return g.Arcs(s);
}

template <class Graph>
class Search {
 public:
  Search(Graph &graph, const OutputMap &output, const DecodeOptions &options)
      : graph_(graph), output_(output), options_(options) {}

  DecodeResult Run(const PosteriorMatrix &post) {
    if (!(options_.beam > 0)) throw ParameterError("beam must be positive");
    if (options_.nbest == 0) throw ParameterError("nbest must be positive");
    DecodeResult result;
    result.stats.frames = post.NumFrames();
    StateId start = graph_.Start();
    if (start == wfst::kNoState) return result;
    ActiveSet cur(options_.nbest);
    cur.Insert(start, 0.0, 0);
    Close(&cur);
    std::vector<double> cost(post.NumPhones());
    for (std::size_t t = 0; t < post.NumFrames(); ++t) {
      for (std::size_t j = 0; j < cost.size(); ++j) {
        double p = post.At(t, j);
        cost[j] = p > 0 ? -options_.acoustic_scale * std::log(p) : kInf;
      }
      ActiveSet next(options_.nbest);
      const double threshold = cur.Best() + options_.beam;
      for (std::size_t i = 0; i < cur.Size(); ++i) {
        const StateId s = cur.State(i);
        const auto &tokens = cur.Tokens(i);
        for (const auto &arc : ArcsOf(graph_, s)) {
          if (arc.ilabel == wfst::kEpsilon) continue;
          if (static_cast<std::size_t>(arc.ilabel) > cost.size()) {
            throw ParameterError("graph input label " + std::to_string(arc.ilabel) +
                                 " has no posterior column");
          }
          const double ac = cost[arc.ilabel - 1];
          if (ac == kInf) continue;
          ++result.stats.arcs_visited;
          for (const auto &tok : tokens) {
            if (tok.cost > threshold) continue;
            double c = tok.cost + ac + arc.weight.Value();
            if (c > next.Best() + options_.beam) continue;
            next.Insert(arc.nextstate, c, Extend(tok.history, arc.olabel));
          }
        }
      }
      Close(&next);
      cur = std::move(next);
      result.stats.max_active_states = std::max(result.stats.max_active_states, cur.Size());
      if (cur.Size() == 0) return result;
    }
    Finish(cur, &result);
    return result;
  }

 private:
  std::int32_t Extend(std::int32_t history, Label olabel) {
    if (olabel == wfst::kEpsilon) return history;
    Label word = output_.to_word.empty() ? olabel : output_.to_word[olabel];
    return histories_.Extend(history, word);
  }

  // Input-epsilon closure, label-correcting since pushed graphs may carry
  // negative weights.
  void Close(ActiveSet *set) {
    const double threshold = set->Best() + options_.beam;
    std::deque<StateId> queue;
    std::unordered_map<StateId, char> queued;
    for (std::size_t i = 0; i < set->Size(); ++i) {
      queue.push_back(set->State(i));
      queued[set->State(i)] = 1;
    }
    while (!queue.empty()) {
      StateId s = queue.front();
      queue.pop_front();
      queued[s] = 0;
      const auto tokens = set->Tokens(set->IndexOf(s));
      for (const auto &arc : ArcsOf(graph_, s)) {
        if (arc.ilabel != wfst::kEpsilon) continue;
        for (const auto &tok : tokens) {
          double c = tok.cost + arc.weight.Value();
          if (c > threshold) continue;
          if (set->Insert(arc.nextstate, c, Extend(tok.history, arc.olabel)) &&
              !queued[arc.nextstate]) {
            queued[arc.nextstate] = 1;
            queue.push_back(arc.nextstate);
          }
        }
      }
    }
  }

  void Finish(const ActiveSet &cur, DecodeResult *result) {
    const double threshold = cur.Best() + options_.beam;
    std::map<std::int32_t, double> best;
    for (std::size_t i = 0; i < cur.Size(); ++i) {
      const double final = graph_.Final(cur.State(i)).Value();
      if (final == kInf) continue;
      for (const auto &tok : cur.Tokens(i)) {
        double c = tok.cost + final;
        if (c > threshold) continue;
        auto [it, inserted] = best.emplace(tok.history, c);
        if (!inserted) it->second = std::min(it->second, c);
      }
    }
    for (const auto &[history, score] : best) {
      Hypothesis h;
      h.score = score;
      for (Label w : histories_.Words(history)) h.words.push_back(output_.words->Symbol(w));
      result->nbest.push_back(std::move(h));
    }
    std::sort(result->nbest.begin(), result->nbest.end(),
              [](const Hypothesis &a, const Hypothesis &b) {
                if (a.score != b.score) return a.score < b.score;
                return a.words < b.words;
              });
    if (result->nbest.size() > options_.nbest) result->nbest.resize(options_.nbest);
  }

  Graph &graph_;
  const OutputMap &output_;
  const DecodeOptions &options_;
  Histories histories_;
};

}  // namespace

DecodeResult ViterbiDecode(const PosteriorMatrix &post, wfst::LazyComposeFst &graph,
                           const OutputMap &output, const DecodeOptions &options) {
  return Search<wfst::LazyComposeFst>(graph, output, options).Run(post);
}

DecodeResult ViterbiDecode(const PosteriorMatrix &post, const wfst::Fst &graph,
                           const OutputMap &output, const DecodeOptions &options) {
  return Search<const wfst::Fst>(graph, output, options).Run(post);
}

wfst::Fst PosteriorFst(const PosteriorMatrix &post, double acoustic_scale) {
  wfst::Fst out;
  out.AddState();
  out.SetStart(0);
  for (std::size_t t = 0; t < post.NumFrames(); ++t) {
    StateId next = out.AddState();
    for (std::size_t j = 0; j < post.NumPhones(); ++j) {
      double p = post.At(t, j);
      if (p <= 0) continue;
      Label l = static_cast<Label>(j + 1);
      out.AddArc(next - 1, wfst::Arc{l, l, wfst::Weight(-acoustic_scale * std::log(p)), next});
    }
  }
  out.SetFinal(out.NumStates() - 1, wfst::Weight::One());
  return out;
}

}  // namespace slu::decoder
