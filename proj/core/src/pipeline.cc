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

#include "osl/pipeline.h"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "osl/errors.h"

namespace osl {

std::string ToString(Method method) {
  switch (method) {
    case Method::kLcExponential:
      return "lc-exp";
    case Method::kLcCubic:
      return "lc-cubic";
    case Method::kOpenMax:
      return "openmax";
    case Method::kArgmaxBaseline:
      return "argmax-baseline";
  }
  return "lc-exp";
}

Method ParseMethod(std::string_view name) {
  if (name == "lc-exp") return Method::kLcExponential;
  if (name == "lc-cubic") return Method::kLcCubic;
  if (name == "openmax") return Method::kOpenMax;
  if (name == "argmax-baseline") return Method::kArgmaxBaseline;
  throw InvalidInputError("unknown method '" + std::string(name) + "'");
}

Evaluation Evaluate(std::span<const LogitRecord> records,
                    const EvaluationOptions& options, const OpenMaxModel* model) {
  const std::size_t k = ValidateRecords(records);
  if (k == 0) throw InvalidInputError("nothing to evaluate");
  if (options.method == Method::kOpenMax) {
    if (model == nullptr) throw InvalidInputError("openmax needs a calibrated model");
    if (model->num_classes != k) {
      throw InvalidInputError("OpenMax model has K = " +
                              std::to_string(model->num_classes) +
                              " but the logits have " + std::to_string(k));
    }
    if (!options.sweep && !(options.threshold >= 0.0 && options.threshold <= 1.0)) {
      throw InvalidInputError("epsilon_pred must lie in [0, 1]");
    }
  }
  if (std::isnan(options.threshold)) throw InvalidInputError("threshold is NaN");

  Evaluation eval;
  const std::size_t n = records.size();
  eval.scores.resize(n);
  std::vector<int> labels(n);
  std::vector<GroundTruth> truths;
  truths.reserve(n);
  for (const LogitRecord& r : records) truths.push_back(r.truth);

  const auto start = std::chrono::steady_clock::now();
  switch (options.method) {
    case Method::kLcExponential:
    case Method::kLcCubic: {
      const CognizanceKind kind = options.method == Method::kLcExponential
                                      ? CognizanceKind::kExponential
                                      : CognizanceKind::kCubic;
      for (std::size_t i = 0; i < n; ++i) {
        const LcScore s = ScoreLc(records[i].logits, kind);
        eval.scores[i] = s.cognizance;
        labels[i] = s.domestic_argmax;
      }
      break;
    }
    case Method::kOpenMax:
      for (std::size_t i = 0; i < n; ++i) {
        const OpenMaxScore s = ScoreOpenMax(records[i].logits, *model, options.top_m);
        const std::size_t best = ArgMax(s.probs);
        labels[i] = static_cast<int>(best);
        eval.scores[i] = best == 0 ? -std::numeric_limits<double>::infinity()
                                   : s.probs[best];
      }
      break;
    case Method::kArgmaxBaseline:
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t best = ArgMax(records[i].logits);
        labels[i] = static_cast<int>(best) + 1;
        eval.scores[i] = records[i].logits[best];
      }
      break;
  }

  if (options.method == Method::kArgmaxBaseline) {
    eval.predictions = labels;
  } else {
    double theta = options.threshold;
    if (options.sweep) {
      eval.sweep = SweepThreshold(eval.scores, labels, truths, k, options.epsilon_stab);
      theta = eval.sweep->best_theta;
    }
    eval.threshold = theta;
    eval.predictions.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      eval.predictions[i] = eval.scores[i] < theta ? 0 : labels[i];
    }
  }
  eval.identification_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  eval.counts = Tally(eval.predictions, truths, k, options.epsilon_stab);
  eval.q1 = ComputeQ1(eval.counts);
  eval.confusion = CrIc(eval.counts);
  eval.accuracies = FaccCacc(eval.counts);
  return eval;
}

std::vector<LogitRecord> DropMisclassified(std::span<const LogitRecord> records) {
  std::vector<LogitRecord> kept;
  kept.reserve(records.size());
  for (const LogitRecord& r : records) {
    if (r.truth.is_domestic() &&
        static_cast<int>(ArgMax(r.logits)) + 1 != r.truth.class_id()) {
      continue;
    }
    kept.push_back(r);
  }
  return kept;
}

}  // namespace osl
