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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "slu/base/errors.h"
#include "slu/ngram/arpa.h"
#include "slu/ngram/ngram-fst.h"
#include "slu/ngram/ngram.h"
#include "slu/wfst/language.h"
#include "slu/wfst/shortest-path.h"

using namespace slu;
using namespace slu::ngram;

namespace {

std::vector<Tokens> Corpus(std::initializer_list<const char *> sentences) {
  std::vector<Tokens> out;
  for (const char *s : sentences) {
    std::istringstream in(s);
    Tokens t;
    for (std::string w; in >> w;) t.push_back(w);
    out.push_back(t);
  }
  return out;
}

std::vector<Tokens> RandomCorpus(std::mt19937_64 &rng, int vocab, int sentences, int max_len) {
  std::uniform_int_distribution<int> word(0, vocab - 1);
  std::uniform_int_distribution<int> len(1, max_len);
  std::vector<Tokens> out;
  for (int i = 0; i < sentences; ++i) {
    Tokens t;
    int n = len(rng);
    // Skewed choice so some words are frequent.
    for (int j = 0; j < n; ++j) t.push_back("w" + std::to_string(std::min(word(rng), word(rng))));
    out.push_back(t);
  }
  return out;
}

// Independent count: every window of the padded sentence, by string key.
std::map<std::string, std::uint64_t> NaiveCounts(const std::vector<Tokens> &corpus, int order) {
  std::map<std::string, std::uint64_t> out;
  for (const auto &s : corpus) {
    std::vector<std::string> p{"<s>"};
    p.insert(p.end(), s.begin(), s.end());
    p.push_back("</s>");
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::string key;
      for (std::size_t j = i; j < p.size() && j < i + order; ++j) {
        key += (j > i ? " " : "") + p[j];
        ++out[key];
      }
    }
  }
  return out;
}

std::map<std::string, std::uint64_t> Flatten(const NGramCounts &c) {
  std::map<std::string, std::uint64_t> out;
  for (const auto &[g, n] : c.Counts()) {
    std::string key;
    for (std::size_t i = 0; i < g.size(); ++i) key += (i ? " " : "") + g[i];
    out[key] = n;
  }
  return out;
}

// Textbook back-off recursion over the model tables.
double BruteLogProb(const NGramModel &m, Tokens h, const std::string &w) {
  Tokens g = h;
  g.push_back(w);
  if (static_cast<int>(g.size()) <= m.Order()) {
    auto it = m.Grams(static_cast<int>(g.size())).find(g);
    if (it != m.Grams(static_cast<int>(g.size())).end()) return it->second.logprob;
  }
  if (h.empty()) return -INFINITY;
  double bo = 0.0;
  if (static_cast<int>(h.size()) <= m.Order()) {
    auto it = m.Grams(static_cast<int>(h.size())).find(h);
    if (it != m.Grams(static_cast<int>(h.size())).end() && it->second.has_backoff) {
      bo = it->second.backoff;
    }
  }
  return bo + BruteLogProb(m, Tokens(h.begin() + 1, h.end()), w);
}

double BruteSentence(const NGramModel &m, const Tokens &s) {
  Tokens all = s;
  for (auto &t : all) {
    if (!m.InVocabulary(t)) t = "<unk>";
  }
  all.push_back("</s>");
  Tokens h{"<s>"};
  double total = 0.0;
  for (const auto &w : all) {
    Tokens ctx = h;
    while (static_cast<int>(ctx.size()) > m.Order() - 1) ctx.erase(ctx.begin());
    total += BruteLogProb(m, ctx, w);
    h.push_back(w);
  }
  return total;
}

std::shared_ptr<wfst::SymbolTable> Symbols(const NGramModel &m) {
  auto syms = std::make_shared<wfst::SymbolTable>();
  for (const auto &w : m.Vocabulary()) {
    if (w != kBos && w != kEos) syms->AddSymbol(w);
  }
  return syms;
}

// All accepting paths of `fst` for `labels`, with their weights.
std::vector<double> AcceptingPaths(const wfst::Fst &fst, const std::vector<wfst::Label> &labels) {
  std::vector<double> out;
  std::function<void(wfst::StateId, std::size_t, double)> walk = [&](wfst::StateId s,
                                                                     std::size_t i, double w) {
    if (i == labels.size() && fst.IsFinal(s)) out.push_back(w + fst.Final(s).Value());
    for (const auto &a : fst.Arcs(s)) {
      if (a.ilabel == wfst::kEpsilon) {
        walk(a.nextstate, i, w + a.weight.Value());
      } else if (i < labels.size() && a.ilabel == labels[i]) {
        walk(a.nextstate, i + 1, w + a.weight.Value());
      }
    }
  };
  walk(fst.Start(), 0, 0.0);
  return out;
}

std::vector<Tokens> Contexts(const NGramModel &m) {
  std::vector<Tokens> out{{}};
  for (int k = 1; k < m.Order(); ++k) {
    for (const auto &[g, e] : m.Grams(k)) {
      if (e.has_backoff) out.push_back(g);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("counting pads with sentence markers") {
  auto c = CountNGrams(Corpus({"a b"}), 2);
  CHECK(c.Count({"<s>", "a"}) == 1);
  CHECK(c.Count({"a", "b"}) == 1);
  CHECK(c.Count({"b", "</s>"}) == 1);
  CHECK(c.Count({"<s>"}) == 1);
  CHECK(c.Count({"a"}) == 1);
  CHECK(c.Count({"b"}) == 1);
  CHECK(c.Count({"</s>"}) == 1);
  CHECK(c.Counts().size() == 7);
  CHECK(c.Vocabulary().count("<unk>") == 1);

  auto twice = CountNGrams(Corpus({"a b", "a b"}), 2);
  for (const auto &[g, n] : c.Counts()) CHECK(twice.Count(g) == 2 * n);

  CHECK_THROWS_AS(CountNGrams(Corpus({"a"}), 0), ParameterError);
  CHECK_THROWS_AS(CountNGrams({Tokens{}}, 2), ParameterError);
}

TEST_CASE("counts agree with a naive recount") {
  std::mt19937_64 rng(1);
  for (int order = 1; order <= 4; ++order) {
    auto corpus = RandomCorpus(rng, 8, 40, 6);
    auto counts = CountNGrams(corpus, order);
    CHECK(Flatten(counts) == NaiveCounts(corpus, order));
    for (const auto &[g, n] : counts.Counts()) {
      if (g.size() > 1) CHECK(n <= counts.Count(Tokens(g.begin(), g.end() - 1)));
    }
  }
}

TEST_CASE("update counts equals recount and commutes") {
  std::mt19937_64 rng(2);
  auto a = RandomCorpus(rng, 6, 20, 5);
  auto b = RandomCorpus(rng, 9, 15, 5);
  auto c = RandomCorpus(rng, 12, 10, 5);
  auto base = CountNGrams(a, 3);
  CHECK(UpdateCounts(base, {}) == base);
  auto all = a;
  all.insert(all.end(), b.begin(), b.end());
  CHECK(UpdateCounts(base, b) == CountNGrams(all, 3));
  CHECK(UpdateCounts(UpdateCounts(base, b), c) == UpdateCounts(UpdateCounts(base, c), b));
  auto before = base;
  UpdateCounts(base, b);
  CHECK(base == before);
}

TEST_CASE("single-sentence unigram model is normalized") {
  auto m = EstimateKatz(CountNGrams(Corpus({"a"}), 1));
  double total = std::exp(m.LogProb({}, "a")) + std::exp(m.LogProb({}, "</s>")) +
                 std::exp(m.LogProb({}, "<unk>"));
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::exp(m.LogProb({}, "<unk>")) > 0.0);
}

TEST_CASE("Katz estimate on a two-sentence corpus") {
  auto m = EstimateKatz(CountNGrams(Corpus({"a b", "a c"}), 2));
  // Both orders have degenerate count-of-counts, so d = 0.5 absolute
  // discounting applies: unigram counts a:2 b:1 c:1 </s>:2 over 6 tokens.
  double pb = std::exp(m.LogProb({"a"}, "b"));
  double pc = std::exp(m.LogProb({"a"}, "c"));
  CHECK(pb == doctest::Approx(pc).epsilon(1e-12));
  CHECK(pb < 0.5);
  CHECK(pb == doctest::Approx(0.25).epsilon(1e-12));
  const NGramEntry *a = m.Find({"a"});
  REQUIRE(a != nullptr);
  REQUIRE(a->has_backoff);
  double alpha = 0.5 / (1.0 - 0.5 / 6 - 0.5 / 6);
  CHECK(std::exp(a->backoff) == doctest::Approx(alpha).epsilon(1e-12));
  CHECK(std::exp(m.LogProb({}, "<unk>")) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(std::exp(m.LogProb({"a"}, "a")) == doctest::Approx(alpha * 1.5 / 6).epsilon(1e-12));
  CHECK_FALSE(m.Warnings().empty());
}

TEST_CASE("Good-Turing discounts follow the textbook formula") {
  // Count-of-counts n1..n6 = 12 6 4 3 2 1 in one sentence (</s> is one of
  // the singletons).
  Tokens s;
  const int n[] = {0, 11, 6, 4, 3, 2, 1};
  for (int r = 1; r <= 6; ++r) {
    for (int i = 0; i < n[r]; ++i) {
      for (int j = 0; j < r; ++j) s.push_back("c" + std::to_string(r) + "_" + std::to_string(i));
    }
  }
  auto m = EstimateKatz(CountNGrams({s}, 1));
  CHECK(m.Warnings().empty());
  const double nr[] = {0, 12, 6, 4, 3, 2, 1};
  const double total = static_cast<double>(s.size() + 1);
  const double common = 6.0 * nr[6] / nr[1];
  double seen = 0.0;
  for (int r = 1; r <= 6; ++r) {
    double d = r <= 5 ? ((r + 1) * nr[r + 1] / (r * nr[r]) - common) / (1 - common) : 1.0;
    double p = d * r / total;
    CHECK(std::exp(m.LogProb({}, "c" + std::to_string(r) + "_0")) ==
          doctest::Approx(p).epsilon(1e-12));
    seen += p * nr[r];
  }
  CHECK(std::exp(m.LogProb({}, "<unk>")) == doctest::Approx(1.0 - seen).epsilon(1e-12));
}

TEST_CASE("every context of random models is normalized") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    int order = 1 + trial % 4;
    auto corpus = RandomCorpus(rng, 4 + trial, 30 + 10 * trial, 7);
    auto m = EstimateKatz(CountNGrams(corpus, order));
    for (const auto &h : Contexts(m)) {
      INFO("order " << order << " context size " << h.size());
      CHECK(std::fabs(ContextMass(m, h) - 1.0) < 1e-6);
    }
  }
}

TEST_CASE("sequence scoring") {
  auto m = EstimateKatz(CountNGrams(Corpus({"a b", "a c", "b"}), 2));
  CHECK(m.SequenceLogProb({}) == doctest::Approx(m.LogProb({"<s>"}, "</s>")));
  auto rep = EstimateKatz(CountNGrams(Corpus({"x y", "x y", "x y", "x y", "x y", "x y", "x y",
                                              "x y", "x y", "x y"}),
                                      2));
  double lp = rep.SequenceLogProb({"x", "y"});
  CHECK(lp < 0.0);
  CHECK(lp > -0.5);

  std::mt19937_64 rng(4);
  for (int order = 1; order <= 4; ++order) {
    auto model = EstimateKatz(CountNGrams(RandomCorpus(rng, 7, 50, 6), order));
    auto probes = RandomCorpus(rng, 9, 50, 6);  // includes unseen words
    for (const auto &p : probes) {
      CHECK(model.SequenceLogProb(p) == doctest::Approx(BruteSentence(model, p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("unigram acceptor") {
  auto m = EstimateKatz(CountNGrams(Corpus({"a", "a a"}), 1));
  auto syms = Symbols(m);
  auto fst = ToFst(m, syms);
  CHECK(fst.NumStates() == 1);
  auto paths = AcceptingPaths(fst, {syms->Find("a"), syms->Find("a")});
  REQUIRE(paths.size() == 1);
  CHECK(paths[0] == doctest::Approx(-m.SequenceLogProb({"a", "a"})).epsilon(1e-12));
}

TEST_CASE("FST weights match exact scores on unique derivations") {
  std::mt19937_64 rng(5);
  int unique = 0, multiple = 0;
  for (int order = 2; order <= 3; ++order) {
    auto corpus = RandomCorpus(rng, 6, 40, 5);
    auto m = EstimateKatz(CountNGrams(corpus, order));
    auto syms = Symbols(m);
    auto fst = ToFst(m, syms);
    auto probes = corpus;
    auto extra = RandomCorpus(rng, 6, 60, 5);
    probes.insert(probes.end(), extra.begin(), extra.end());
    // <unk> never occurs in training, so these force back-off at every step.
    probes.push_back({"<unk>"});
    for (const auto &w : m.Vocabulary()) {
      if (w != kBos && w != kEos && w != kUnk) probes.push_back({"<unk>", w, "<unk>"});
    }
    for (const auto &p : probes) {
      std::vector<wfst::Label> labels;
      for (const auto &w : p) labels.push_back(syms->Find(w));
      auto paths = AcceptingPaths(fst, labels);
      REQUIRE_FALSE(paths.empty());
      double best = *std::min_element(paths.begin(), paths.end());
      double exact = -m.SequenceLogProb(p);
      if (paths.size() == 1) {
        ++unique;
        CHECK(std::fabs(best - exact) <= 1e-9);
      } else {
        ++multiple;
        CHECK(best <= exact + 1e-9);
      }
      auto sp = wfst::ShortestPath(wfst::ArcSort(fst, wfst::SortTape::kInput), 1);
      CHECK_FALSE(sp.empty());
    }
  }
  CHECK(unique > 0);
  CHECK(multiple > 0);
}

TEST_CASE("acceptors without the empty string") {
  for (int order = 1; order <= 3; ++order) {
    auto m = EstimateKatz(CountNGrams(Corpus({"david bowie", "queen"}), order));
    auto syms = Symbols(m);
    auto with = ToFst(m, syms);
    NGramFstOptions opts;
    opts.allow_empty = false;
    auto without = ToFst(m, syms, opts);
    auto a = wfst::AcceptorLanguage(with, 3);
    auto b = wfst::AcceptorLanguage(without, 3);
    CHECK(a.count({}) == 1);
    CHECK(b.count({}) == 0);
    a.erase(wfst::LabelString{});
    CHECK(a.size() == b.size());
    for (const auto &[k, w] : a) CHECK(wfst::ApproxEqual(b.at(k), w));
  }
}

TEST_CASE("missing symbols are alphabet errors") {
  auto m = EstimateKatz(CountNGrams(Corpus({"a b"}), 2));
  auto syms = std::make_shared<wfst::SymbolTable>();
  syms->AddSymbol("a");
  CHECK_THROWS_AS(ToFst(m, syms), AlphabetError);
}

TEST_CASE("ARPA round trip") {
  std::mt19937_64 rng(6);
  for (int order = 1; order <= 3; ++order) {
    auto m = EstimateKatz(CountNGrams(RandomCorpus(rng, 10, 60, 6), order));
    std::stringstream text;
    WriteArpa(m, text);
    auto r = ReadArpa(text);
    REQUIRE(r.Order() == m.Order());
    for (int k = 1; k <= order; ++k) {
      REQUIRE(r.Grams(k).size() == m.Grams(k).size());
      for (const auto &[g, e] : m.Grams(k)) {
        const NGramEntry *f = r.Find(g);
        REQUIRE(f != nullptr);
        if (std::isinf(e.logprob)) {
          CHECK(std::isinf(f->logprob));
        } else {
          CHECK(std::fabs(f->logprob - e.logprob) / std::numbers::ln10 < 1e-6);
        }
        CHECK(f->has_backoff == e.has_backoff);
        CHECK(std::fabs(f->backoff - e.backoff) / std::numbers::ln10 < 1e-6);
      }
    }
  }
}

TEST_CASE("ARPA reading") {
  std::istringstream two("\\data\\\nngram 1=2\n\n\\1-grams:\n-0.30103 a\n-0.30103 </s>\n\\end\\\n");
  auto m = ReadArpa(two);
  CHECK(std::exp(m.LogProb({}, "a")) == doctest::Approx(0.5).epsilon(1e-5));

  std::istringstream zero("\\data\\\nngram 1=0\n\n\\1-grams:\n\\end\\\n");
  CHECK_THROWS_AS(ReadArpa(zero), ParseError);

  std::istringstream header("\\data\\\nngram 1=1\n\n\\2-grams:\n-1 a\n\\end\\\n");
  try {
    ReadArpa(header);
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 4);
  }

  std::istringstream count("\\data\\\nngram 1=3\n\n\\1-grams:\n-1 a\n\\end\\\n");
  CHECK_THROWS_AS(ReadArpa(count), ParseError);
}

TEST_CASE("injected values receive probability") {
  auto counts = CountNGrams(Corpus({"david bowie", "queen", "the rolling stones"}), 3);
  auto before = EstimateKatz(counts);
  auto after = EstimateKatz(UpdateCounts(counts, Corpus({"new artist name"})));
  CHECK(after.InVocabulary("new"));
  CHECK_FALSE(before.InVocabulary("new"));
  CHECK(std::exp(after.LogProb({"<s>"}, "new")) > 0.0);
  CHECK(std::isfinite(after.SequenceLogProb({"new", "artist", "name"})));
}
