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

#ifndef SLU_NLU_INTENT_H_
#define SLU_NLU_INTENT_H_

#include <string>
#include <vector>

#include "slu/nlu/features.h"
#include "slu/nlu/optimize.h"

namespace slu::nlu {

struct IntentExample {
  SparseVector x;
  int label = 0;
};

// Multinomial logistic regression over sparse features.
class IntentModel {
 public:
  IntentModel() = default;
  IntentModel(std::vector<std::string> classes, FeatureTable features);

  const std::vector<std::string> &Classes() const { return classes_; }
  const FeatureTable &Features() const { return features_; }
  FeatureTable &MutableFeatures() { return features_; }
  int NumClasses() const { return static_cast<int>(classes_.size()); }
  // Row-major classes x features.
  const std::vector<double> &Weights() const { return weights_; }
  std::vector<double> &MutableWeights() { return weights_; }

  std::vector<double> Probabilities(const SparseVector &x) const;
  // Index of the most probable class; ties go to the lexicographically
  // smallest class name.
  int Predict(const std::vector<double> &probabilities) const;

 private:
  std::vector<std::string> classes_;
  FeatureTable features_;
  std::vector<double> weights_;
};

// Softmax of the scores, computed stably.
std::vector<double> Softmax(const std::vector<double> &scores);

// Mean negative log-likelihood plus l2/2 |w|^2 and its gradient for weights
// laid out like IntentModel::Weights.
double IntentObjective(const std::vector<double> &w, int classes, int features,
                       const std::vector<IntentExample> &data, double l2, Execution execution,
                       GradientSum *sum, std::vector<double> *grad);

// Gradient descent from zero weights. Throws TrainingError when a class has
// no example.
void TrainIntentModel(const std::vector<IntentExample> &data, const GdOptions &options,
                      IntentModel *model);

}  // namespace slu::nlu

#endif  // SLU_NLU_INTENT_H_
