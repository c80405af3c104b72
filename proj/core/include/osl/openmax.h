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

#ifndef OSL_OPENMAX_H_
#define OSL_OPENMAX_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "osl/core.h"
#include "osl/weibull.h"

namespace osl {

enum class DistanceKind { kEuclidean, kCosine, kEuCos };

// Weighting of the top-M classes. kPaper: alpha_j = (M - r_j) / M, which
// gives rank M weight zero. kReference: alpha_j = (M + 1 - r_j) / M.
enum class AlphaRule { kPaper, kReference };

std::string ToString(DistanceKind kind);
std::string ToString(AlphaRule rule);
DistanceKind ParseDistanceKind(std::string_view name);
AlphaRule ParseAlphaRule(std::string_view name);

struct DistanceConfig {
  DistanceKind kind = DistanceKind::kEuCos;
  // Divisor applied to the Euclidean term of eucos.
  double eucos_scale = 200.0;
};

// euclidean: |a - mu|; cosine: 1 - cos(a, mu);
// eucos: |a - mu| / eucos_scale + 1 - cos(a, mu).
// Cosine terms throw InvalidInputError for zero-norm vectors.
double Distance(std::span<const double> a, std::span<const double> mu,
                const DistanceConfig& config = {});

inline double EuCosDistance(std::span<const double> a,
                            std::span<const double> mu) {
  return Distance(a, mu, {DistanceKind::kEuCos, 200.0});
}

struct OpenMaxClass {
  int id = 0;  // 1..K
  std::vector<double> centroid;
  WeibullParams weibull;
};

// Result of meta-recognition calibration. Immutable once built.
struct OpenMaxModel {
  std::size_t num_classes = 0;
  std::size_t eta = 20;
  DistanceConfig distance;
  AlphaRule alpha_rule = AlphaRule::kPaper;
  std::vector<OpenMaxClass> classes;  // classes[k - 1] has id k

  // Checks dimensions and Weibull parameters; throws InvalidInputError.
  void Validate() const;

  std::string ToJson() const;
  static OpenMaxModel FromJson(const std::string& text);
};

struct CalibrationOptions {
  std::size_t eta = 20;
  DistanceConfig distance;
  AlphaRule alpha_rule = AlphaRule::kPaper;
};

// Phase 1. Per class k, the correctly classified training samples
// (truth == k and argmax(logits) == k) give the centroid and, through their
// distances to it, the Weibull tail fit of size eta. Classes are fitted in
// parallel. Throws CalibrationError naming the class when a class has fewer
// than eta correct samples or its tail cannot be fitted.
OpenMaxModel Calibrate(std::span<const LogitRecord> training,
                       const CalibrationOptions& options);

struct OpenMaxScore {
  std::vector<double> probs;           // K + 1 entries, index 0 = foreign
  std::vector<double> recalibrated;    // a_new, K entries
  double foreign_activation = 0.0;     // a_0
  std::vector<double> omega;           // Weibull CDF of the distance; 0 outside top-M
};

// Steps 2b-2c given precomputed omega (only the top-M entries are read).
OpenMaxScore Recalibrate(std::span<const double> a,
                         std::span<const double> omega, std::size_t top_m,
                         AlphaRule rule);

// Full Phase 2 scoring of one logit vector.
OpenMaxScore ScoreOpenMax(std::span<const double> a, const OpenMaxModel& model,
                          std::size_t top_m);

// Step 2d on a K+1 probability vector: the argmax over 0..K if it is a
// domestic class with probability >= epsilon_pred, otherwise 0.
int DecideOpenMax(std::span<const double> probs, double epsilon_pred);

int PredictOpenMax(std::span<const double> a, const OpenMaxModel& model,
                   std::size_t top_m, double epsilon_pred);

}  // namespace osl

#endif  // OSL_OPENMAX_H_
