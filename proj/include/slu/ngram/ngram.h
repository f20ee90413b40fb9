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

#ifndef SLU_NGRAM_NGRAM_H_
#define SLU_NGRAM_NGRAM_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace slu::ngram {

inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";
inline constexpr std::string_view kUnk = "<unk>";

using Tokens = std::vector<std::string>;

// Counts of every k-gram (k <= order) of the corpus sentences padded with one
// <s> and one </s>. The vocabulary always holds <s>, </s> and <unk>.
class NGramCounts {
 public:
  explicit NGramCounts(int order = 1);

  int Order() const { return order_; }
  std::uint64_t Count(const Tokens &gram) const;
  const std::map<Tokens, std::uint64_t> &Counts() const { return counts_; }
  const std::set<std::string> &Vocabulary() const { return vocab_; }
  std::size_t NumSentences() const { return sentences_; }

  void AddSentence(const Tokens &tokens);
  // Restores a stored table; used by deserialization.
  void SetCount(const Tokens &gram, std::uint64_t count);
  void SetNumSentences(std::size_t n) { sentences_ = n; }

  friend bool operator==(const NGramCounts &, const NGramCounts &) = default;

 private:
  int order_;
  std::map<Tokens, std::uint64_t> counts_;
  std::set<std::string> vocab_;
  std::size_t sentences_ = 0;
};

NGramCounts CountNGrams(const std::vector<Tokens> &corpus, int order);

// Returns a new value; `counts` is left as it was.
NGramCounts UpdateCounts(const NGramCounts &counts, const std::vector<Tokens> &sentences);

// Natural-log probability of `gram`'s last token after its prefix, and the
// back-off weight applied when `gram` is a context and a successor is unseen.
struct NGramEntry {
  double logprob = 0.0;
  double backoff = 0.0;
  bool has_backoff = false;
};

class NGramModel {
 public:
  explicit NGramModel(int order = 1);

  int Order() const { return order_; }
  // grams(k) holds the explicit k-grams, k in [1, order].
  const std::map<Tokens, NGramEntry> &Grams(int k) const { return grams_[k - 1]; }
  std::map<Tokens, NGramEntry> &MutableGrams(int k) { return grams_[k - 1]; }
  const NGramEntry *Find(const Tokens &gram) const;
  std::set<std::string> Vocabulary() const;
  bool InVocabulary(const std::string &token) const;

  // ln P(token | context) with back-off; out-of-vocabulary tokens score as
  // <unk>, in the context as well.
  double LogProb(Tokens context, const std::string &token) const;
  // ln P(<s> tokens </s>).
  double SequenceLogProb(const Tokens &tokens) const;

  const std::vector<std::string> &Warnings() const { return warnings_; }
  void AddWarning(std::string w) { warnings_.push_back(std::move(w)); }

 private:
  int order_;
  std::vector<std::map<Tokens, NGramEntry>> grams_;
  std::vector<std::string> warnings_;
};

struct KatzOptions {
  // Counts up to this value are Good-Turing discounted.
  int cutoff = 5;
  // Used instead when an order's count-of-counts cannot support Good-Turing.
  double fallback_discount = 0.5;
};

NGramModel EstimateKatz(const NGramCounts &counts, const KatzOptions &options = {});

// Sum over every predictable token (all but <s>) of P(token | context),
// resolved through back-off. 1 for a normalized model.
double ContextMass(const NGramModel &model, const Tokens &context);

}  // namespace slu::ngram

#endif  // SLU_NGRAM_NGRAM_H_
