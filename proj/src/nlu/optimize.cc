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

#include "slu/nlu/optimize.h"

#include <algorithm>

namespace slu::nlu {

double GradientSum::Run(std::size_t n, const ExampleGradient &example, Execution execution,
                        std::vector<double> *grad) {
  double losses[kGradientChunks] = {};
  const long chunks = static_cast<long>(kGradientChunks);
  auto body = [&](long c) {
    auto &buf = buffers_[c];
    std::fill(buf.begin(), buf.end(), 0.0);
    const std::size_t begin = n * c / kGradientChunks, end = n * (c + 1) / kGradientChunks;
    double loss = 0;
    for (std::size_t i = begin; i < end; ++i) loss += example(i, buf.data());
    losses[c] = loss;
  };
  if (execution == Execution::kParallel) {
#pragma omp parallel for schedule(static)
    for (long c = 0; c < chunks; ++c) body(c);
  } else {
    for (long c = 0; c < chunks; ++c) body(c);
  }
  grad->assign(dim_, 0.0);
  double total = 0;
  for (std::size_t c = 0; c < kGradientChunks; ++c) {
    total += losses[c];
    const auto &buf = buffers_[c];
    for (std::size_t j = 0; j < dim_; ++j) (*grad)[j] += buf[j];
  }
  return total;
}

double RegularizedMean(std::size_t n, const ExampleGradient &example, double l2,
                       Execution execution, GradientSum *sum, const std::vector<double> &w,
                       std::vector<double> *grad) {
  double loss = sum->Run(n, example, execution, grad);
  const double scale = n > 0 ? 1.0 / static_cast<double>(n) : 0.0;
  loss *= scale;
  double penalty = 0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    (*grad)[j] = (*grad)[j] * scale + l2 * w[j];
    penalty += w[j] * w[j];
  }
  return loss + 0.5 * l2 * penalty;
}

double GradientDescent(const Objective &objective, const GdOptions &options, std::vector<double> *w) {
  std::vector<double> grad;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    objective(*w, &grad);
    for (std::size_t j = 0; j < w->size(); ++j) (*w)[j] -= options.step * grad[j];
  }
  return objective(*w, &grad);
}

}  // namespace slu::nlu
