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

#ifndef OSL_PIPELINE_H_
#define OSL_PIPELINE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "osl/core.h"
#include "osl/lc.h"
#include "osl/metrics.h"
#include "osl/openmax.h"

namespace osl {

// Open-set decision rules that can be evaluated on a logit dataset.
enum class Method { kLcExponential, kLcCubic, kOpenMax, kArgmaxBaseline };

std::string ToString(Method method);
Method ParseMethod(std::string_view name);  // lc-exp, lc-cubic, openmax, argmax-baseline

struct EvaluationOptions {
  Method method = Method::kLcExponential;
  std::size_t top_m = 10;
  // LC threshold / OpenMax epsilon_pred. Ignored when sweep is set.
  double threshold = 0.0;
  bool sweep = false;
  double epsilon_stab = kDefaultEpsilonStab;
};

struct Evaluation {
  std::vector<int> predictions;
  // Cognizance (LC), thresholded domestic probability (OpenMax; -inf when the
  // foreign class wins outright), or the max logit (baseline).
  std::vector<double> scores;
  std::optional<double> threshold;  // the rule's threshold, when it has one
  std::optional<SweepResult> sweep;
  MetricCounts counts;
  Q1Report q1;
  Confusion confusion;
  Accuracies accuracies;
  double identification_seconds = 0.0;
};

// Scores, decides and tallies `records`. `model` is required for OpenMax
// (InvalidInputError otherwise) and must match the logit dimension.
Evaluation Evaluate(std::span<const LogitRecord> records,
                    const EvaluationOptions& options,
                    const OpenMaxModel* model = nullptr);

// Drops domestic records the base classifier gets wrong (argmax != truth).
std::vector<LogitRecord> DropMisclassified(std::span<const LogitRecord> records);

}  // namespace osl

#endif  // OSL_PIPELINE_H_
