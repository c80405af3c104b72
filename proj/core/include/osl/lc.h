// Copyright 2026 The OSL Authors.
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

#ifndef OSL_LC_H_
#define OSL_LC_H_

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "osl/core.h"
#include "osl/metrics.h"

namespace osl {

// Cognizance function g applied per logit before marginalising.
enum class CognizanceKind { kExponential, kCubic };

std::string ToString(CognizanceKind kind);
CognizanceKind ParseCognizanceKind(std::string_view name);

struct LcScore {
  double cognizance = 0.0;   // sum_k g(a_k)
  int domestic_argmax = 0;   // 1..K
  bool saturated = false;    // exponential sum clipped to DBL_MAX
};

// Marginalised cognizance sum_k g(a_k). The exponential sum saturates at the
// largest finite double instead of overflowing; saturation is logged.
LcScore ScoreLc(std::span<const double> a, CognizanceKind kind);
double Cognizance(std::span<const double> a, CognizanceKind kind);

// 0 (foreign) if the cognizance is strictly below theta, otherwise the
// argmax class. theta may be +/-infinity.
int PredictLc(std::span<const double> a, double theta, CognizanceKind kind);

struct ThresholdPoint {
  double theta = 0.0;
  double q1 = 0.0;
};

struct SweepResult {
  double best_theta = 0.0;
  double best_q1 = 0.0;
  std::vector<ThresholdPoint> curve;  // ascending theta
};

// Exact Q1 maximisation over a score threshold. Sample n is predicted
// foreign when scores[n] < theta or domestic_labels[n] == 0, otherwise
// domestic_labels[n]. Candidates are -inf, midpoints between consecutive
// distinct scores and +inf; Q1 is piecewise constant between them so the
// candidate set is exhaustive. Ties prefer the smaller threshold.
SweepResult SweepThreshold(std::span<const double> scores,
                           std::span<const int> domestic_labels,
                           std::span<const GroundTruth> truths,
                           std::size_t num_classes,
                           double epsilon_stab = kDefaultEpsilonStab);

// LC convenience: domestic labels are the logits' argmax.
SweepResult SweepThreshold(std::span<const double> scores,
                           std::span<const LogitRecord> records,
                           double epsilon_stab = kDefaultEpsilonStab);

// Q1 at an explicit threshold, computed from scratch.
double Q1AtThreshold(std::span<const double> scores,
                     std::span<const int> domestic_labels,
                     std::span<const GroundTruth> truths,
                     std::size_t num_classes, double theta,
                     double epsilon_stab = kDefaultEpsilonStab);

}  // namespace osl

#endif  // OSL_LC_H_
