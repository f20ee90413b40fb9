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

#ifndef SLU_NLU_CRF_H_
#define SLU_NLU_CRF_H_

#include <string>
#include <vector>

#include "slu/grammar/annotation.h"
#include "slu/nlu/features.h"
#include "slu/nlu/optimize.h"

namespace slu::nlu {

inline constexpr char kOutside[] = "O";

// Labels for a slot set: O first, then B-/I- pairs in the given order.
std::vector<std::string> BioLabels(const std::vector<std::string> &slots);

// BIO tags of an annotated utterance, one per word.
std::vector<std::string> ToBio(const grammar::AnnotatedUtterance &utterance);

// Spans of a tag sequence. Throws ConversionError on an I- tag that does not
// continue a run of the same slot, or on an unknown tag shape.
std::vector<grammar::SlotSpan> FromBio(const Tokens &tokens, const std::vector<std::string> &tags);

// Same, but a stray I- tag opens a new span instead of throwing.
std::vector<grammar::SlotSpan> FromBioLenient(const Tokens &tokens,
                                              const std::vector<std::string> &tags);

struct CrfSequence {
  std::vector<SparseVector> x;
  std::vector<int> y;
};

// Dense per-position label scores, T x K row-major.
struct CrfLattice {
  std::size_t length = 0;
  int labels = 0;
  std::vector<double> unary;
  const double *Row(std::size_t t) const { return unary.data() + t * labels; }
};

// Linear-chain CRF. Parameters are laid out as [unary K x F | transition K x K]
// with transition (i, j) scoring label i followed by label j.
class CrfModel {
 public:
  CrfModel() = default;
  CrfModel(std::vector<std::string> labels, FeatureTable features);

  const std::vector<std::string> &Labels() const { return labels_; }
  int NumLabels() const { return static_cast<int>(labels_.size()); }
  int LabelId(const std::string &label) const;
  const FeatureTable &Features() const { return features_; }
  FeatureTable &MutableFeatures() { return features_; }
  std::size_t NumParameters() const;
  const std::vector<double> &Weights() const { return weights_; }
  std::vector<double> &MutableWeights() { return weights_; }

  CrfLattice Lattice(const std::vector<SparseVector> &x) const;
  // Highest-scoring label ids; among equal scores the path with the smallest
  // label ids, compared from the last position backwards, wins.
  std::vector<int> Viterbi(const std::vector<SparseVector> &x) const;
  std::vector<std::string> Tag(const std::vector<SparseVector> &x) const;

 private:
  std::vector<std::string> labels_;
  FeatureTable features_;
  std::vector<double> weights_;
};

// log Z of a lattice under the transition matrix (K x K).
double LogPartition(const CrfLattice &lattice, const double *transition);

// Unnormalized score of one label sequence.
double SequenceScore(const CrfLattice &lattice, const double *transition,
                     const std::vector<int> &y);

struct CrfMarginals {
  double log_z = 0;
  std::vector<double> node;  // T x K
  std::vector<double> edge;  // (T-1) x K x K
};

CrfMarginals ForwardBackward(const CrfLattice &lattice, const double *transition);

// Mean negative conditional log-likelihood plus l2/2 |w|^2, with gradient.
double CrfObjective(const std::vector<double> &w, int labels, int features,
                    const std::vector<CrfSequence> &data, double l2, Execution execution,
                    GradientSum *sum, std::vector<double> *grad);

// Gradient descent from zero weights.
void TrainCrfModel(const std::vector<CrfSequence> &data, const GdOptions &options,
                   CrfModel *model);

}  // namespace slu::nlu

#endif  // SLU_NLU_CRF_H_
