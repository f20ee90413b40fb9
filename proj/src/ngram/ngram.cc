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

#include "slu/ngram/ngram.h"

#include <cmath>
#include <limits>

#include "slu/base/errors.h"

namespace slu::ngram {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Successor {
  std::string token;
  std::uint64_t count;
};

// Good-Turing multipliers d_r for r in [1, cutoff]; empty when the
// count-of-counts make the estimate unusable.
std::vector<double> GoodTuring(const std::vector<std::uint64_t> &n, int cutoff) {
  if (n[1] == 0) return {};
  const double common = (cutoff + 1.0) * n[cutoff + 1] / n[1];
  if (common >= 1.0) return {};
  std::vector<double> d(cutoff + 1, 1.0);
  for (int r = 1; r <= cutoff; ++r) {
    if (n[r] == 0) continue;
    double star = (r + 1.0) * n[r + 1] / (r * static_cast<double>(n[r]));
    d[r] = (star - common) / (1.0 - common);
    if (!(d[r] > 0.0 && d[r] <= 1.0)) return {};
  }
  return d;
}

}  // namespace

NGramCounts::NGramCounts(int order) : order_(order) {
  if (order < 1) throw ParameterError("n-gram order must be at least 1");
  vocab_ = {std::string(kBos), std::string(kEos), std::string(kUnk)};
}

std::uint64_t NGramCounts::Count(const Tokens &gram) const {
  auto it = counts_.find(gram);
  return it == counts_.end() ? 0 : it->second;
}

void NGramCounts::AddSentence(const Tokens &tokens) {
  if (tokens.empty()) throw ParameterError("cannot count an empty sentence");
  Tokens padded;
  padded.reserve(tokens.size() + 2);
  padded.emplace_back(kBos);
  for (const auto &t : tokens) {
    if (t == kBos || t == kEos) throw ParameterError("sentence contains a boundary marker");
    padded.push_back(t);
    vocab_.insert(t);
  }
  padded.emplace_back(kEos);
  for (std::size_t i = 0; i < padded.size(); ++i) {
    for (int k = 1; k <= order_ && i + k <= padded.size(); ++k) {
      ++counts_[Tokens(padded.begin() + i, padded.begin() + i + k)];
    }
  }
  ++sentences_;
}

void NGramCounts::SetCount(const Tokens &gram, std::uint64_t count) {
  if (gram.empty() || static_cast<int>(gram.size()) > order_) {
    throw ParameterError("n-gram length outside [1, order]");
  }
  counts_[gram] = count;
  for (const auto &t : gram) vocab_.insert(t);
}

NGramCounts CountNGrams(const std::vector<Tokens> &corpus, int order) {
  NGramCounts counts(order);
  for (const auto &s : corpus) counts.AddSentence(s);
  return counts;
}

NGramCounts UpdateCounts(const NGramCounts &counts, const std::vector<Tokens> &sentences) {
  NGramCounts out = counts;
  for (const auto &s : sentences) out.AddSentence(s);
  return out;
}

NGramModel::NGramModel(int order) : order_(order), grams_(order) {
  if (order < 1) throw ParameterError("n-gram order must be at least 1");
}

const NGramEntry *NGramModel::Find(const Tokens &gram) const {
  if (gram.empty() || static_cast<int>(gram.size()) > order_) return nullptr;
  const auto &table = grams_[gram.size() - 1];
  auto it = table.find(gram);
  return it == table.end() ? nullptr : &it->second;
}

std::set<std::string> NGramModel::Vocabulary() const {
  std::set<std::string> v;
  for (const auto &[g, e] : grams_[0]) v.insert(g[0]);
  return v;
}

bool NGramModel::InVocabulary(const std::string &token) const {
  return grams_[0].count(Tokens{token}) > 0;
}

double NGramModel::LogProb(Tokens context, const std::string &token) const {
  auto map = [this](const std::string &t) {
    return InVocabulary(t) ? t : std::string(kUnk);
  };
  for (auto &t : context) t = map(t);
  if (static_cast<int>(context.size()) > order_ - 1) {
    context.erase(context.begin(), context.end() - (order_ - 1));
  }
  const std::string w = map(token);
  double acc = 0.0;
  while (true) {
    Tokens gram = context;
    gram.push_back(w);
    if (const NGramEntry *e = Find(gram)) return acc + e->logprob;
    if (context.empty()) return kNegInf;
    if (const NGramEntry *e = Find(context); e && e->has_backoff) acc += e->backoff;
    context.erase(context.begin());
  }
}

double NGramModel::SequenceLogProb(const Tokens &tokens) const {
  Tokens context{std::string(kBos)};
  double total = 0.0;
  for (const auto &t : tokens) {
    total += LogProb(context, t);
    context.push_back(t);
  }
  return total + LogProb(context, std::string(kEos));
}

NGramModel EstimateKatz(const NGramCounts &counts, const KatzOptions &options) {
  if (counts.Counts().empty()) throw ParameterError("cannot estimate a model from no counts");
  const int order = counts.Order();
  const int cutoff = options.cutoff;
  const double d_abs = options.fallback_discount;
  NGramModel model(order);

  for (int k = 1; k <= order; ++k) {
    // Successor lists per context, in sorted order.
    std::map<Tokens, std::vector<Successor>> contexts;
    std::vector<std::uint64_t> n(cutoff + 2, 0);
    for (const auto &[gram, c] : counts.Counts()) {
      if (static_cast<int>(gram.size()) != k) continue;
      if (k == 1 && gram[0] == kBos) continue;
      if (c == 0) continue;
      contexts[Tokens(gram.begin(), gram.end() - 1)].push_back({gram.back(), c});
      if (c <= static_cast<std::uint64_t>(cutoff) + 1) ++n[c];
    }
    std::vector<double> gt = GoodTuring(n, cutoff);
    if (gt.empty()) {
      model.AddWarning("order " + std::to_string(k) +
                       ": count-of-counts do not support Good-Turing discounting; "
                       "using absolute discounting");
    }
    auto &table = model.MutableGrams(k);
    std::size_t context_fallbacks = 0;
    for (const auto &[h, succ] : contexts) {
      double total = 0.0;
      for (const auto &s : succ) total += static_cast<double>(s.count);
      auto discounted = [&](bool absolute) {
        std::vector<double> p;
        for (const auto &s : succ) {
          double c = static_cast<double>(s.count);
          if (absolute) {
            p.push_back((c - d_abs) / total);
          } else {
            double d = s.count <= static_cast<std::uint64_t>(cutoff) ? gt[s.count] : 1.0;
            p.push_back(d * c / total);
          }
        }
        return p;
      };
      std::vector<double> p = discounted(gt.empty());
      double seen = 0.0;
      for (double x : p) seen += x;
      if (1.0 - seen <= 1e-12) {
        // Nothing left for unseen successors: discount this context absolutely.
        ++context_fallbacks;
        p = discounted(true);
        seen = 0.0;
        for (double x : p) seen += x;
      }
      double leftover = 1.0 - seen;

      if (k == 1) {
        for (std::size_t i = 0; i < succ.size(); ++i) {
          double prob = p[i] + (succ[i].token == kUnk ? leftover : 0.0);
          table[Tokens{succ[i].token}].logprob = std::log(prob);
        }
        if (!table.count(Tokens{std::string(kUnk)})) {
          table[Tokens{std::string(kUnk)}].logprob = std::log(leftover);
        }
        continue;
      }

      Tokens lower(h.begin() + 1, h.end());
      double lower_seen = 0.0;
      for (const auto &s : succ) lower_seen += std::exp(model.LogProb(lower, s.token));
      double denom = 1.0 - lower_seen;
      NGramEntry *ctx = nullptr;
      if (auto it = model.MutableGrams(k - 1).find(h); it != model.MutableGrams(k - 1).end()) {
        ctx = &it->second;
      }
      if (ctx == nullptr) throw TrainingError("context without a lower-order entry");
      if (denom <= 1e-12) {
        // Every token is already seen after this context: keep the mass here.
        model.AddWarning("context with no unseen successor; renormalized");
        for (double &x : p) x /= seen;
      } else {
        ctx->backoff = std::log(leftover / denom);
        ctx->has_backoff = true;
      }
      for (std::size_t i = 0; i < succ.size(); ++i) {
        Tokens gram = h;
        gram.push_back(succ[i].token);
        table[gram].logprob = std::log(p[i]);
      }
    }
    if (k == 1) table[Tokens{std::string(kBos)}].logprob = kNegInf;
    if (context_fallbacks > 0) {
      model.AddWarning("order " + std::to_string(k) + ": " + std::to_string(context_fallbacks) +
                       " contexts discounted absolutely");
    }
  }
  return model;
}

double ContextMass(const NGramModel &model, const Tokens &context) {
  double sum = 0.0;
  for (const auto &w : model.Vocabulary()) {
    if (w == kBos) continue;
    sum += std::exp(model.LogProb(context, w));
  }
  return sum;
}

}  // namespace slu::ngram
