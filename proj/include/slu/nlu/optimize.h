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

#ifndef SLU_NLU_OPTIMIZE_H_
#define SLU_NLU_OPTIMIZE_H_

#include <cstddef>
#include <functional>
#include <vector>

namespace slu::nlu {

enum class Execution { kSerial, kParallel };

// Examples are split into this many contiguous chunks regardless of the
// thread count; chunk results are added in chunk order, so serial and
// parallel execution give bitwise identical sums.
inline constexpr std::size_t kGradientChunks = 16;

// Adds the loss of example i to the return value and its gradient into the
// buffer it is given.
using ExampleGradient = std::function<double(std::size_t i, double *grad)>;

class GradientSum {
 public:
  explicit GradientSum(std::size_t dim) : dim_(dim), buffers_(kGradientChunks, std::vector<double>(dim)) {}

  // Sum over n examples of loss and gradient, written to *grad.
  double Run(std::size_t n, const ExampleGradient &example, Execution execution,
             std::vector<double> *grad);

 private:
  std::size_t dim_;
  std::vector<std::vector<double>> buffers_;
};

struct GdOptions {
  double step = 1.0;
  double l2 = 1e-3;
  int epochs = 200;
  Execution execution = Execution::kParallel;
};

// Objective value at w with its gradient; the mean data loss plus the L2
// penalty is what gradient descent minimizes.
using Objective = std::function<double(const std::vector<double> &w, std::vector<double> *grad)>;

// Fixed-step full-batch gradient descent; returns the final objective.
double GradientDescent(const Objective &objective, const GdOptions &options, std::vector<double> *w);

// Mean of per-example losses plus l2/2 |w|^2, with gradient.
double RegularizedMean(std::size_t n, const ExampleGradient &example, double l2,
                       Execution execution, GradientSum *sum, const std::vector<double> &w,
                       std::vector<double> *grad);

}  // namespace slu::nlu

#endif  // SLU_NLU_OPTIMIZE_H_
