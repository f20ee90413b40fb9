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

#ifndef SLU_WFST_WEIGHT_H_
#define SLU_WFST_WEIGHT_H_

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>

namespace slu::wfst {

using Label = int32_t;
using StateId = int32_t;

inline constexpr Label kEpsilon = 0;
inline constexpr Label kNoLabel = -1;
inline constexpr StateId kNoState = -1;

// Tropical semiring element: a negative log-probability.
// Plus is min, Times is +, One is 0 and Zero is +infinity.
class Weight {
 public:
  constexpr Weight() : value_(0.0) {}
  constexpr explicit Weight(double value) : value_(value) {}

  static constexpr Weight One() { return Weight(0.0); }
  static constexpr Weight Zero() {
    return Weight(std::numeric_limits<double>::infinity());
  }

  constexpr double Value() const { return value_; }
  bool IsZero() const { return value_ == std::numeric_limits<double>::infinity(); }
  bool IsFinite() const { return std::isfinite(value_); }

  friend constexpr auto operator<=>(Weight a, Weight b) = default;

 private:
  double value_;
};

inline Weight Plus(Weight a, Weight b) { return a.Value() <= b.Value() ? a : b; }

inline Weight Times(Weight a, Weight b) {
  if (a.IsZero() || b.IsZero()) return Weight::Zero();
  return Weight(a.Value() + b.Value());
}

// Left division a / b; only meaningful when b is not Zero.
inline Weight Divide(Weight a, Weight b) {
  if (a.IsZero()) return Weight::Zero();
  return Weight(a.Value() - b.Value());
}

inline bool ApproxEqual(Weight a, Weight b, double delta = 1e-9) {
  if (a.IsZero() || b.IsZero()) return a.IsZero() && b.IsZero();
  return std::fabs(a.Value() - b.Value()) <= delta;
}

}  // namespace slu::wfst

#endif  // SLU_WFST_WEIGHT_H_
