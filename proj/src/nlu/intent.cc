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

#include "slu/nlu/intent.h"

#include <algorithm>
#include <cmath>

#include "slu/base/errors.h"

namespace slu::nlu {

IntentModel::IntentModel(std::vector<std::string> classes, FeatureTable features)
    : classes_(std::move(classes)),
      features_(std::move(features)),
      weights_(classes_.size() * static_cast<std::size_t>(features_.Size()), 0.0) {}

std::vector<double> Softmax(const std::vector<double> &scores) {
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<double> p(scores.size());
  double z = 0;
  for (std::size_t k = 0; k < scores.size(); ++k) z += p[k] = std::exp(scores[k] - top);
  for (auto &v : p) v /= z;
  return p;
}

namespace {

std::vector<double> Scores(const double *w, int classes, int features, const SparseVector &x) {
  std::vector<double> s(classes, 0.0);
  for (int k = 0; k < classes; ++k) {
    const double *row = w + static_cast<std::size_t>(k) * features;
    for (const auto &[j, v] : x) {
      if (j < features) s[k] += row[j] * v;
    }
  }
  return s;
}

}  // namespace

std::vector<double> IntentModel::Probabilities(const SparseVector &x) const {
  return Softmax(Scores(weights_.data(), NumClasses(), features_.Size(), x));
}

int IntentModel::Predict(const std::vector<double> &p) const {
  int best = 0;
  for (int k = 1; k < NumClasses(); ++k) {
    if (p[k] > p[best] || (p[k] == p[best] && classes_[k] < classes_[best])) best = k;
  }
  return best;
}

double IntentObjective(const std::vector<double> &w, int classes, int features,
                       const std::vector<IntentExample> &data, double l2, Execution execution,
                       GradientSum *sum, std::vector<double> *grad) {
  auto example = [&](std::size_t i, double *g) {
    const auto &ex = data[i];
    auto p = Softmax(Scores(w.data(), classes, features, ex.x));
    for (int k = 0; k < classes; ++k) {
      const double r = p[k] - (k == ex.label ? 1.0 : 0.0);
      double *row = g + static_cast<std::size_t>(k) * features;
      for (const auto &[j, v] : ex.x) row[j] += r * v;
    }
    return -std::log(p[ex.label]);
  };
  return RegularizedMean(data.size(), example, l2, execution, sum, w, grad);
}

void TrainIntentModel(const std::vector<IntentExample> &data, const GdOptions &options,
                      IntentModel *model) {
  const int k = model->NumClasses(), f = model->Features().Size();
  std::vector<int> seen(k, 0);
  for (const auto &ex : data) seen.at(ex.label) = 1;
  for (int c = 0; c < k; ++c) {
    if (!seen[c]) throw TrainingError("intent '" + model->Classes()[c] + "' has no example");
  }
  GradientSum sum(static_cast<std::size_t>(k) * f);
  auto &w = model->MutableWeights();
  w.assign(static_cast<std::size_t>(k) * f, 0.0);
  GradientDescent(
      [&](const std::vector<double> &x, std::vector<double> *g) {
        return IntentObjective(x, k, f, data, options.l2, options.execution, &sum, g);
      },
      options, &w);
}

}  // namespace slu::nlu
