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
#include <random>
#include <set>
#include <sstream>

#include "slu/base/errors.h"
#include "slu/grammar/dataset.h"
#include "slu/nlu/crf.h"
#include "slu/nlu/features.h"
#include "slu/nlu/intent.h"
#include "slu/nlu/nlu.h"
#include "slu/nlu/optimize.h"
#include "support/nlu-oracles.h"
#include "support/synthetic.h"

using namespace slu;
using namespace slu::nlu;
using namespace slu::testing;

namespace {

Tokens Split(const std::string &s) { return grammar::Normalize(s); }

bool Has(const std::vector<std::string> &v, const std::string &name) {
  return std::find(v.begin(), v.end(), name) != v.end();
}

// Leftmost-longest matching computed from the value set directly.
std::vector<MatchKind> MatchOracle(const std::set<Tokens> &values, const Tokens &tokens) {
  auto is_prefix = [&](const Tokens &p) {
    for (const auto &v : values) {
      if (v.size() >= p.size() && std::equal(p.begin(), p.end(), v.begin())) return true;
    }
    return false;
  };
  std::vector<MatchKind> out(tokens.size(), MatchKind::kNone);
  std::size_t s = 0;
  while (s < tokens.size()) {
    std::size_t full = 0, walk = 0;
    for (std::size_t e = s + 1; e <= tokens.size(); ++e) {
      Tokens piece(tokens.begin() + s, tokens.begin() + e);
      if (!is_prefix(piece)) break;
      walk = e;
      if (values.count(piece)) full = e;
    }
    if (full) {
      std::fill(out.begin() + s, out.begin() + full, MatchKind::kFull);
      s = full;
    } else if (walk) {
      std::fill(out.begin() + s, out.begin() + walk, MatchKind::kPartial);
      s = walk;
    } else {
      ++s;
    }
  }
  return out;
}

// Every token sequence over the alphabet of length 1..max_len.
std::vector<Tokens> AllStrings(const Tokens &alphabet, std::size_t max_len) {
  std::vector<Tokens> out, layer{{}};
  for (std::size_t n = 1; n <= max_len; ++n) {
    std::vector<Tokens> next;
    for (const auto &p : layer) {
      for (const auto &a : alphabet) {
        Tokens q = p;
        q.push_back(a);
        next.push_back(q);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

constexpr char kMusicToy[] = R"({
  "language": "en",
  "intents": {
    "playMusic": {"utterances": [
      "play some music by (the rolling stones)[artist]",
      "play some music by (queen)[artist]",
      "play (daft punk)[artist]",
      "i want to hear (the beatles)[artist]",
      "put on something by (massive attack)[artist]",
      "play songs by (queen)[artist] please",
      "play some music by (the kinks)[artist]",
      "i want to hear (bowie)[artist]"
    ]},
    "volumeUp": {"utterances": [
      "turn it up", "louder please", "increase the volume", "turn the volume up",
      "make it louder"
    ]},
    "pauseMusic": {"utterances": [
      "pause the music", "stop playing", "pause", "pause it please", "stop the music"
    ]}
  },
  "slots": {"artist": {"kind": "gazetteer", "values": [
    "the rolling stones", "queen", "daft punk", "the beatles", "massive attack", "bowie",
    "the kinks", "pink floyd", "the who"
  ]}}
})";

}  // namespace

TEST_CASE("features fire for words, affixes, clusters and boundaries") {
  ClusterMap clusters;
  clusters.Set("play", 3);
  const Tokens t = Split("play queen");
  auto f0 = Featurize(t, 0, clusters, {});
  CHECK(Has(f0, "w[0]=play"));
  CHECK(Has(f0, "w[1]=queen"));
  CHECK(Has(f0, "c[0]=3"));
  CHECK(Has(f0, "c[1]=?"));  // fallback cluster
  CHECK(Has(f0, "p3=pla"));
  CHECK(Has(f0, "s2=ay"));
  CHECK(Has(f0, "bos"));
  CHECK_FALSE(Has(f0, "eos"));
  auto f1 = Featurize(t, 1, clusters, {});
  CHECK(Has(f1, "eos"));
  CHECK(Has(f1, "w[-1]=play"));
  CHECK_THROWS_AS(Featurize(t, 2, clusters, {}), ParameterError);
}

TEST_CASE("gazetteer flags full and partial matches") {
  GazetteerParser artist("artist");
  artist.Add(Split("the rolling stones"));
  artist.Add(Split("queen"));
  const ClusterMap none;
  const Tokens full = Split("play the rolling stones");
  for (std::size_t i = 1; i < 4; ++i) {
    auto f = Featurize(full, i, none, {artist});
    CHECK(Has(f, "g:artist=full"));
    CHECK_FALSE(Has(f, "g:artist=partial"));
  }
  CHECK_FALSE(Has(Featurize(full, 0, none, {artist}), "g:artist=full"));
  const Tokens prefix = Split("the rolling");
  for (std::size_t i = 0; i < 2; ++i) {
    auto f = Featurize(prefix, i, none, {artist});
    CHECK(Has(f, "g:artist=partial"));
    CHECK_FALSE(Has(f, "g:artist=full"));
  }
  CHECK(artist.Match(prefix) == MatchOracle({Split("the rolling stones"), Split("queen")}, prefix));
}

TEST_CASE("gazetteer matching agrees with a value-set scan") {
  std::mt19937_64 rng(7);
  const Tokens alphabet{"a", "b", "c"};
  const auto queries = AllStrings(alphabet, 6);
  for (int trial = 0; trial < 5; ++trial) {
    std::set<Tokens> values;
    std::uniform_int_distribution<int> len(1, 3), sym(0, 2);
    for (int i = 0; i < 4; ++i) {
      Tokens v;
      for (int j = len(rng); j > 0; --j) v.push_back(alphabet[sym(rng)]);
      values.insert(v);
    }
    GazetteerParser parser("s");
    for (const auto &v : values) parser.Add(v);
    CHECK(parser.NumValues() == values.size());
    for (const auto &v : values) {
      CHECK(parser.Contains(v));
      for (std::size_t n = 1; n < v.size(); ++n) {
        Tokens p(v.begin(), v.begin() + n);
        if (!values.count(p)) CHECK_FALSE(parser.Contains(p));
      }
    }
    std::size_t mismatches = 0;
    for (const auto &q : queries) mismatches += parser.Match(q) != MatchOracle(values, q);
    CHECK(mismatches == 0);
  }
}

TEST_CASE("augmented gazetteers equal rebuilt ones") {
  GazetteerParser p("artist");
  p.Add(Split("queen"));
  CHECK(AugmentGazetteer(p, {Split("queen")}) == p);
  auto q = AugmentGazetteer(p, {Split("pink floyd")});
  CHECK(q.Match(Split("play pink floyd")) ==
        std::vector<MatchKind>{MatchKind::kNone, MatchKind::kFull, MatchKind::kFull});
  CHECK(p.NumValues() == 1);

  std::mt19937_64 rng(11);
  const Tokens alphabet{"a", "b", "c"};
  const auto queries = AllStrings(alphabet, 6);
  std::uniform_int_distribution<int> len(1, 3), sym(0, 2), count(0, 4);
  auto random_values = [&] {
    std::vector<Tokens> out;
    for (int i = count(rng); i > 0; --i) {
      Tokens v;
      for (int j = len(rng); j > 0; --j) v.push_back(alphabet[sym(rng)]);
      out.push_back(v);
    }
    return out;
  };
  for (int trial = 0; trial < 10; ++trial) {
    auto v1 = random_values(), v2 = random_values();
    GazetteerParser base("s"), rebuilt("s");
    for (const auto &v : v1) base.Add(v), rebuilt.Add(v);
    for (const auto &v : v2) rebuilt.Add(v);
    auto augmented = AugmentGazetteer(base, v2);
    CHECK(augmented == rebuilt);
    std::size_t mismatches = 0;
    for (const auto &s : queries) mismatches += augmented.Match(s) != rebuilt.Match(s);
    CHECK(mismatches == 0);
  }
}

TEST_CASE("cluster induction") {
  const std::vector<Tokens> corpus{Split("play red now"), Split("play blue now"),
                                   Split("stop green later"), Split("stop it later")};
  auto one = InduceClusters(corpus, 1);
  CHECK(one.NumClusters() == 1);
  CHECK(one.Size() == 8);
  auto all = InduceClusters(corpus, 8);
  CHECK(all.NumClusters() == 8);
  CHECK_THROWS_AS(InduceClusters(corpus, 9), ParameterError);
  CHECK_THROWS_AS(InduceClusters(corpus, 0), ParameterError);

  // red and blue have identical neighbour counts, as do green and it.
  for (int k = 2; k <= 6; ++k) {
    auto c = InduceClusters(corpus, k);
    CHECK(c.NumClusters() == k);
    CHECK(c.Cluster("red") == c.Cluster("blue"));
    CHECK(c.Cluster("green") == c.Cluster("it"));
  }
  CHECK(InduceClusters(corpus, 4) == InduceClusters(corpus, 4));
  CHECK(one.Cluster("unseen") == ClusterMap::kFallback);

  std::stringstream io;
  auto c = InduceClusters(corpus, 4);
  WriteClusters(c, io);
  CHECK(ReadClusters(io) == c);
  std::istringstream bad("play\tx\n");
  CHECK_THROWS_AS(ReadClusters(bad), ParseError);
}

TEST_CASE("zero-weight intent model is uniform and picks the first name") {
  FeatureTable table;
  table.Intern("bias");
  IntentModel model({"pause", "louder", "play"}, table);
  auto p = model.Probabilities({{0, 1.0}});
  for (double v : p) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(model.Classes()[model.Predict(p)] == "louder");
}

TEST_CASE("intent softmax normalizes on fuzzed inputs") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 20.0);
  FeatureTable table;
  for (int f = 0; f < 20; ++f) table.Intern("f" + std::to_string(f));
  IntentModel model({"a", "b", "c", "d", "e"}, table);
  std::uniform_int_distribution<int> feat(0, 19);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    for (auto &w : model.MutableWeights()) w = normal(rng);
    SparseVector x;
    std::set<int> ids;
    for (int i = 0; i < 5; ++i) ids.insert(feat(rng));
    for (int id : ids) x.emplace_back(id, std::abs(normal(rng)) / 5);
    double sum = 0;
    for (double v : model.Probabilities(x)) {
      CHECK(v >= 0);
      sum += v;
    }
    worst = std::max(worst, std::abs(sum - 1));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("intent training separates a separable set") {
  FeatureTable table;
  std::vector<IntentExample> data;
  const std::vector<std::pair<std::string, int>> raw{
      {"turn on the light", 0}, {"switch on the lamp", 0}, {"lights on", 0},
      {"turn off the light", 1}, {"switch off the lamp", 1}, {"lights off", 1}};
  for (const auto &[text, label] : raw) {
    data.push_back({table.Vectorize(UtteranceFeatures(Split(text), {}, {}, false, false)), label});
  }
  IntentModel model({"on", "off"}, table);
  TrainIntentModel(data, GdOptions{}, &model);
  for (const auto &ex : data) CHECK(model.Predict(model.Probabilities(ex.x)) == ex.label);

  IntentModel missing({"on", "off", "dim"}, table);
  CHECK_THROWS_AS(TrainIntentModel(data, GdOptions{}, &missing), TrainingError);
}

TEST_CASE("intent gradient matches central differences") {
  std::mt19937_64 rng(5);
  const int classes = 3, features = 6;
  std::uniform_int_distribution<int> feat(0, features - 1), cls(0, classes - 1);
  std::normal_distribution<double> normal(0.0, 0.5);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<IntentExample> data;
    for (int i = 0; i < 10; ++i) {
      std::set<int> ids{feat(rng), feat(rng), feat(rng)};
      SparseVector x;
      for (int id : ids) x.emplace_back(id, 1.0 + normal(rng));
      data.push_back({x, cls(rng)});
    }
    std::vector<double> w(classes * features);
    for (auto &v : w) v = normal(rng);
    GradientSum sum(w.size());
    Objective f = [&](const std::vector<double> &x, std::vector<double> *g) {
      return IntentObjective(x, classes, features, data, 1e-2, Execution::kSerial, &sum, g);
    };
    std::vector<double> grad;
    f(w, &grad);
    CHECK(RelativeError(grad, CentralDifferences(f, w)) < 1e-4);
  }
}

TEST_CASE("zero-weight CRF: Z = K^T and all-O decode") {
  for (int k = 1; k <= 5; k += 2) {
    std::vector<std::string> labels{kOutside};
    for (int i = 1; i < k; ++i) labels.push_back("B-s" + std::to_string(i));
    FeatureTable table;
    table.Intern("x");
    CrfModel model(labels, table);
    for (std::size_t t = 1; t <= 6; ++t) {
      std::vector<SparseVector> x(t, SparseVector{{0, 1.0}});
      const double log_z = LogPartition(model.Lattice(x), Transition(model));
      CHECK(std::exp(log_z) == doctest::Approx(std::pow(k, t)).epsilon(1e-12));
      CHECK(model.Viterbi(x) == std::vector<int>(t, 0));
    }
  }
  CHECK_THROWS_AS(CrfModel({"B-x", "O"}, FeatureTable()), ParameterError);
}

TEST_CASE("CRF partition, marginals and Viterbi agree with enumeration") {
  std::mt19937_64 rng(13);
  double worst_z = 0, worst_marginal = 0;
  int argmax_mismatches = 0, cases = 0;
  for (int k = 1; k <= 4; ++k) {
    for (std::size_t t = 1; t <= 4; ++t) {
      for (int trial = 0; trial < 10; ++trial) {
        auto crf = MakeRandomCrf(k, t, 5, rng);
        const auto lattice = crf.model.Lattice(crf.x);
        const double *trans = Transition(crf.model);
        double z = 0, best = -1e300;
        std::vector<int> argmax;
        std::vector<double> node(t * k, 0.0);
        for (const auto &y : AllSequences(k, t)) {
          const double s = SequenceScore(lattice, trans, y);
          z += std::exp(s);
          for (std::size_t i = 0; i < t; ++i) node[i * k + y[i]] += std::exp(s);
          if (s > best) best = s, argmax = y;
        }
        const double log_z = LogPartition(lattice, trans);
        worst_z = std::max(worst_z, std::abs(std::exp(log_z) - z) / z);
        const auto m = ForwardBackward(lattice, trans);
        CHECK(m.log_z == doctest::Approx(log_z).epsilon(1e-12));
        for (std::size_t i = 0; i < t; ++i) {
          double row = 0;
          for (int c = 0; c < k; ++c) {
            row += m.node[i * k + c];
            worst_marginal = std::max(worst_marginal, std::abs(m.node[i * k + c] - node[i * k + c] / z));
          }
          worst_marginal = std::max(worst_marginal, std::abs(row - 1));
        }
        argmax_mismatches += crf.model.Viterbi(crf.x) != argmax;
        ++cases;
      }
    }
  }
  CHECK(cases == 160);
  CHECK(worst_z < 1e-8);
  CHECK(worst_marginal < 1e-9);
  CHECK(argmax_mismatches == 0);
}

TEST_CASE("CRF gradient matches central differences") {
  std::mt19937_64 rng(17);
  const int k = 3, features = 4;
  std::normal_distribution<double> normal(0.0, 0.5);
  for (int trial = 0; trial < 5; ++trial) {
    auto data = RandomCrfData(k, features, 6, rng);
    std::vector<double> w(k * features + k * k);
    for (auto &v : w) v = normal(rng);
    GradientSum sum(w.size());
    Objective f = [&](const std::vector<double> &x, std::vector<double> *g) {
      return CrfObjective(x, k, features, data, 1e-2, Execution::kSerial, &sum, g);
    };
    std::vector<double> grad;
    f(w, &grad);
    CHECK(RelativeError(grad, CentralDifferences(f, w)) < 1e-4);
  }
}

TEST_CASE("serial and parallel gradients are bitwise equal") {
  std::mt19937_64 rng(19);
  const int k = 4, features = 8;
  for (std::size_t n : {1u, 7u, 16u, 53u, 200u}) {
    auto data = RandomCrfData(k, features, n, rng);
    std::vector<double> w(k * features + k * k);
    std::normal_distribution<double> normal(0.0, 0.5);
    for (auto &v : w) v = normal(rng);
    GradientSum a(w.size()), b(w.size());
    std::vector<double> ga, gb;
    const double fa = CrfObjective(w, k, features, data, 1e-3, Execution::kSerial, &a, &ga);
    const double fb = CrfObjective(w, k, features, data, 1e-3, Execution::kParallel, &b, &gb);
    CHECK(fa == fb);
    CHECK(ga == gb);
  }
  auto data = RandomCrfData(k, features, 40, rng);
  std::vector<std::string> labels{kOutside, "B-a", "I-a", "B-b"};
  FeatureTable table;
  for (int f = 0; f < features; ++f) table.Intern("f" + std::to_string(f));
  CrfModel serial(labels, table), parallel(labels, table);
  GdOptions opts;
  opts.epochs = 20;
  opts.execution = Execution::kSerial;
  TrainCrfModel(data, opts, &serial);
  opts.execution = Execution::kParallel;
  TrainCrfModel(data, opts, &parallel);
  CHECK(serial.Weights() == parallel.Weights());
}

TEST_CASE("BIO conversion") {
  auto u = grammar::ParseAnnotated("play (the rolling stones)[artist] in the (kitchen)[room]");
  auto tags = ToBio(u);
  CHECK(tags == std::vector<std::string>{"O", "B-artist", "I-artist", "I-artist", "O", "O",
                                         "B-room"});
  CHECK(FromBio(u.Words(), tags) == u.Slots());
  const Tokens words = Split("a b c");
  CHECK_THROWS_AS(FromBio(words, {"O", "I-x", "O"}), ConversionError);
  CHECK_THROWS_AS(FromBio(words, {"B-y", "I-x", "O"}), ConversionError);
  CHECK_THROWS_AS(FromBio(words, {"O", "X", "O"}), ConversionError);
  auto lenient = FromBioLenient(words, {"O", "I-x", "I-x"});
  REQUIRE(lenient.size() == 1);
  CHECK(lenient[0].value == "b c");
  auto adjacent = FromBio(words, {"B-x", "B-x", "O"});
  CHECK(adjacent.size() == 2);
  CHECK(BioLabels({"a", "b"}) == std::vector<std::string>{"O", "B-a", "I-a", "B-b", "I-b"});
}

TEST_CASE("CRF memorizes a toy set") {
  auto ds = grammar::ParseDataset(kMusicToy);
  auto model = NluModel::Train(ds);
  for (const auto &u : ds.intents.at("playMusic")) {
    auto r = model.Parse(u.Words());
    CHECK(r.intent == "playMusic");
    CHECK(r.slots == u.Slots());
  }
}

TEST_CASE("parse extracts intent and slots") {
  auto model = NluModel::Train(grammar::ParseDataset(kMusicToy));
  auto r = model.Parse(std::string("play some music by the rolling stones"));
  CHECK(r.intent == "playMusic");
  REQUIRE(r.slots.size() == 1);
  CHECK(r.slots[0].slot == "artist");
  CHECK(r.slots[0].value == "the rolling stones");
  CHECK(r.slots[0].begin == 4);
  CHECK(r.slots[0].end == 7);

  auto louder = model.Parse(std::string("make it louder"));
  CHECK(louder.intent == "volumeUp");
  CHECK(louder.slots.empty());

  auto unknown = model.Parse(Tokens{kUnknownToken, kUnknownToken});
  CHECK_FALSE(unknown.intent.empty());
  double sum = 0, top = 0;
  for (const auto &[name, p] : unknown.probabilities) sum += p, top = std::max(top, p);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(top < 0.9);
  CHECK(model.Parse(Tokens{}).slots.empty());
}

TEST_CASE("gazetteer injection reaches the slot filler") {
  auto model = NluModel::Train(grammar::ParseDataset(kMusicToy));
  auto injected = model.WithGazetteerValues("artist", {Split("zorblax quartet")});
  auto r = injected.Parse(std::string("play some music by zorblax quartet"));
  CHECK(r.intent == "playMusic");
  REQUIRE(r.slots.size() == 1);
  CHECK(r.slots[0].value == "zorblax quartet");
  CHECK_FALSE(model.Gazetteers()[0].Contains(Split("zorblax quartet")));
  CHECK_THROWS_AS(model.WithGazetteerValues("room", {}), ParameterError);
}

TEST_CASE("training is deterministic and serialization round-trips") {
  auto ds = grammar::ParseDataset(kMusicToy);
  auto a = NluModel::Train(ds), b = NluModel::Train(ds);
  CHECK(a.ToJson() == b.ToJson());
  auto c = NluModel::FromJson(a.ToJson());
  CHECK(c.ToJson() == a.ToJson());
  for (const auto &probe : {"play queen", "turn it up", "stop the music", "play the who please"}) {
    auto ra = a.Parse(std::string(probe)), rc = c.Parse(std::string(probe));
    CHECK(ra.intent == rc.intent);
    CHECK(ra.slots == rc.slots);
    CHECK(ra.probabilities == rc.probabilities);
  }
  CHECK_THROWS_AS(NluModel::FromJson("{}"), SchemaError);

  NluOptions no_gaz;
  no_gaz.intent_gazetteers = false;
  auto d = NluModel::Train(ds, no_gaz);
  for (const auto &name : d.Intent().Features().Names()) CHECK(name.rfind("g:", 0) != 0);
}

TEST_CASE("music dataset with many artists trains and parses") {
  auto ds = grammar::ParseDataset(testing::MusicDatasetJson(200, 3));
  auto model = NluModel::Train(ds);
  auto samples = testing::SampleInGrammar(ds, 50, 9);
  int perfect = 0;
  for (const auto &s : samples) {
    auto r = model.Parse(s.utterance.Words());
    perfect += r.intent == s.intent && r.slots == s.utterance.Slots();
  }
  CHECK(perfect >= 45);
}
