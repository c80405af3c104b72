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

#include "osl/lc.h"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "osl/errors.h"
#include "osl/logging.h"

namespace osl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A threshold strictly between two consecutive distinct scores. Falls back to
// `hi` itself when the halfway point rounds onto an endpoint; "s < hi" then
// still selects exactly the scores <= lo.
double SplitPoint(double lo, double hi) {
  if (std::isinf(lo)) return hi - std::max(1.0, std::abs(hi));
  if (std::isinf(hi)) return lo + std::max(1.0, std::abs(lo));
  const double mid = lo + (hi - lo) / 2.0;
  return (mid > lo && mid < hi) ? mid : hi;
}

void CheckAligned(std::size_t scores, std::size_t labels, std::size_t truths) {
  if (scores == 0) throw InvalidInputError("threshold sweep of empty input");
  if (scores != labels || scores != truths) {
    throw InvalidInputError("scores, labels and truths are not aligned");
  }
}

}  // namespace

std::string ToString(CognizanceKind kind) {
  return kind == CognizanceKind::kExponential ? "exponential" : "cubic";
}

CognizanceKind ParseCognizanceKind(std::string_view name) {
  if (name == "exponential" || name == "exp") return CognizanceKind::kExponential;
  if (name == "cubic") return CognizanceKind::kCubic;
  throw InvalidInputError("unknown cognizance function '" + std::string(name) + "'");
}

LcScore ScoreLc(std::span<const double> a, CognizanceKind kind) {
  RequireFinite(a, "cognizance");
  LcScore score;
  score.domestic_argmax = static_cast<int>(ArgMax(a)) + 1;
  double sum = 0.0;
  for (double v : a) sum += kind == CognizanceKind::kExponential ? std::exp(v) : v * v * v;
  if (!std::isfinite(sum)) {
    // exp overflows to +inf; a cubic sum can also reach -inf.
    score.saturated = true;
    sum = sum > 0 ? DBL_MAX : -DBL_MAX;
    LogWarning(ToString(kind) + " cognizance saturated at the largest double");
  }
  score.cognizance = sum;
  return score;
}

double Cognizance(std::span<const double> a, CognizanceKind kind) {
  return ScoreLc(a, kind).cognizance;
}

int PredictLc(std::span<const double> a, double theta, CognizanceKind kind) {
  if (std::isnan(theta)) throw InvalidInputError("LC threshold is NaN");
  const LcScore score = ScoreLc(a, kind);
  return score.cognizance < theta ? 0 : score.domestic_argmax;
}

SweepResult SweepThreshold(std::span<const double> scores,
                           std::span<const int> domestic_labels,
                           std::span<const GroundTruth> truths,
                           std::size_t num_classes, double epsilon_stab) {
  CheckAligned(scores.size(), domestic_labels.size(), truths.size());
  for (double s : scores) {
    if (std::isnan(s)) throw InvalidInputError("threshold sweep score is NaN");
  }

  // theta = -inf: nothing is rejected on score.
  MetricCounts counts =
      Tally(domestic_labels, truths, num_classes, epsilon_stab);

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });

  SweepResult result;
  result.curve.reserve(order.size() + 2);
  auto record = [&](double theta) {
    const double q1 = ComputeQ1(counts, /*warn=*/false).q1;
    result.curve.push_back({theta, q1});
    if (result.curve.size() == 1 || q1 > result.best_q1) {
      result.best_q1 = q1;
      result.best_theta = theta;
    }
  };
  record(-kInf);
  for (std::size_t i = 0; i < order.size();) {
    const double value = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == value; ++i) {
      const std::size_t n = order[i];
      if (domestic_labels[n] != 0) {
        counts.Add(truths[n], domestic_labels[n], -1);
        counts.Add(truths[n], 0);
      }
    }
    record(i < order.size() ? SplitPoint(value, scores[order[i]]) : kInf);
  }
  return result;
}

SweepResult SweepThreshold(std::span<const double> scores,
                           std::span<const LogitRecord> records,
                           double epsilon_stab) {
  const std::size_t k = ValidateRecords(records);
  std::vector<int> labels;
  std::vector<GroundTruth> truths;
  labels.reserve(records.size());
  truths.reserve(records.size());
  for (const LogitRecord& r : records) {
    labels.push_back(static_cast<int>(ArgMax(r.logits)) + 1);
    truths.push_back(r.truth);
  }
  return SweepThreshold(scores, labels, truths, k, epsilon_stab);
}

double Q1AtThreshold(std::span<const double> scores,
                     std::span<const int> domestic_labels,
                     std::span<const GroundTruth> truths,
                     std::size_t num_classes, double theta,
                     double epsilon_stab) {
  CheckAligned(scores.size(), domestic_labels.size(), truths.size());
  std::vector<int> predictions(scores.size());
  for (std::size_t n = 0; n < scores.size(); ++n) {
    predictions[n] = scores[n] < theta ? 0 : domestic_labels[n];
  }
  return ComputeQ1(Tally(predictions, truths, num_classes, epsilon_stab),
                   /*warn=*/false)
      .q1;
}

}  // namespace osl
