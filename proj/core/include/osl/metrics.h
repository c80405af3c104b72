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

#ifndef OSL_METRICS_H_
#define OSL_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "osl/core.h"

namespace osl {

inline constexpr double kDefaultEpsilonStab = 1e-4;

// Open-set confusion tally. Per-class vectors are indexed by class - 1.
//
//   truth  prediction  counts
//   i      i           TP_i
//   i      i'          FN_i, FP_i'
//   i      u           FN_i, FP_u
//   u      i           FN_u, FP_i
//   u      u           TP_u
//   f      i           FN_f, FP_i
//   f      u           TP_f
struct MetricCounts {
  explicit MetricCounts(std::size_t num_classes = 0,
                        double epsilon_stab = kDefaultEpsilonStab);

  std::size_t num_classes() const { return tp.size(); }

  std::vector<std::int64_t> tp, fp, fn;
  std::int64_t tp_u = 0, fn_u = 0, fp_u = 0;
  std::int64_t tp_f = 0, fn_f = 0;
  double epsilon_stab = kDefaultEpsilonStab;

  std::int64_t NumDomestic() const;
  std::int64_t NumForeign() const { return tp_u + fn_u; }
  std::int64_t NumFooling() const { return tp_f + fn_f; }
  std::int64_t Total() const { return NumDomestic() + NumForeign() + NumFooling(); }

  // Accumulates one (truth, prediction) pair; prediction 0 = foreign. A
  // negative weight removes a previously added pair.
  void Add(const GroundTruth& truth, int prediction, std::int64_t weight = 1);

  // Field-wise sum; shards must agree on K.
  MetricCounts& operator+=(const MetricCounts& other);

  friend bool operator==(const MetricCounts&, const MetricCounts&) = default;
};

// Throws InvalidInputError on misalignment or a label outside 0..K.
MetricCounts Tally(std::span<const int> predictions,
                   std::span<const GroundTruth> truths, std::size_t num_classes,
                   double epsilon_stab = kDefaultEpsilonStab);
MetricCounts Tally(std::span<const int> predictions,
                   std::span<const LogitRecord> records, std::size_t num_classes,
                   double epsilon_stab = kDefaultEpsilonStab);

struct Q1Report {
  double q1 = 0.0;
  double f_d = 0.0;
  double f_o = 0.0;
  double p_o = 0.0;
  double r_o = 0.0;
  // F_i per class; nullopt for classes absent from the test set, which are
  // left out of the F_d mean.
  std::vector<std::optional<double>> per_class_f;
};

// Q1 = (F_d + F_o) / 2 with
//   P_i = TP_i / (TP_i + FP_i + e)      R_i = TP_i / (TP_i + FN_i)
//   F_i = 2 P_i R_i / (P_i + R_i + e)   F_d = mean_i F_i
//   P_o = (TP_u + TP_f) / (TP_u + TP_f + FP_u + e)
//   R_o = (TP_u + TP_f) / (TP_u + TP_f + FN_u + FN_f)
//   F_o = 2 P_o R_o / (P_o + R_o + e)
// where e is epsilon_stab. 0/0 recalls evaluate to 0 (with a warning when
// `warn` is set).
Q1Report ComputeQ1(const MetricCounts& counts, bool warn = true);

// Domestic/foreign confusion summary of an open-set run.
struct Confusion {
  std::int64_t correct = 0;                // CR: domestic predicted as own class
  std::int64_t incorrect = 0;              // IC: domestic predicted as other class
  std::int64_t domestic_rejected = 0;      // domestic predicted foreign
  std::int64_t fooling_as_domestic = 0;
  std::int64_t fooling_as_foreign = 0;
  std::int64_t foreign_as_domestic = 0;
  std::int64_t foreign_as_foreign = 0;

  std::int64_t Total() const;
};

// CR = sum TP_i; IC = sum FP_i - FN_u - FN_f; rejected = FP_u.
Confusion CrIc(const MetricCounts& counts);

// Smallest tally reproducing a confusion summary (two domestic classes), for
// feeding published matrices through the same code path.
MetricCounts CountsFromConfusion(const Confusion& confusion,
                                 double epsilon_stab = kDefaultEpsilonStab);

struct Accuracies {
  double f_acc = 0.0;
  std::optional<double> c_acc;  // absent when nothing domestic was predicted domestic
};

// F_ACC = (domestic->domestic + foreign->foreign + fooling->foreign) / total
// C_ACC = CR / (CR + IC)
Accuracies FaccCacc(const MetricCounts& counts);

struct PrPoint {
  double threshold = 0.0;
  double recall = 0.0;
  double precision = 0.0;
};

// Precision-recall points of "score >= threshold is positive", one per
// distinct score in descending order. Tied scores cross together. Throws
// InvalidInputError when there are no positives.
std::vector<PrPoint> PrCurve(std::span<const double> scores,
                             std::span<const bool> positives);

// Trapezoidal area under the PR points over recall, after a stable sort by
// recall and prepending (0, precision of the first point).
double AucPr(std::span<const PrPoint> points);

struct ScenarioSpec {
  std::size_t n_domestic = 0;
  std::size_t n_fooling = 0;
  std::size_t images_per_foreign_class = 0;
  std::size_t n_foreign_classes = 0;

  std::size_t NumForeign() const { return images_per_foreign_class * n_foreign_classes; }
  std::size_t Total() const { return n_domestic + n_fooling + NumForeign(); }
  double ComfortRatio() const;
};

struct ScenarioPools {
  std::vector<LogitRecord> domestic;
  std::vector<LogitRecord> fooling;
  std::vector<std::vector<LogitRecord>> foreign_by_class;
};

struct Scenario {
  std::vector<LogitRecord> records;  // domestic, then fooling, then foreign
  double comfort_ratio = 0.0;
};

// Seeded draws without replacement from each pool. Throws
// InsufficientDataError naming the group when a pool is too small.
Scenario BuildScenario(const ScenarioSpec& spec, const ScenarioPools& pools,
                       std::uint64_t seed);

struct TimingInput {
  bool requires_domestic_learning = false;
  double domestic_learning_s = 0.0;       // measured wall clock; ignored otherwise
  double identification_total_s = 0.0;
  std::size_t num_images = 0;
  std::optional<double> base_per_image_s; // base-classifier inference time
};

struct TimingReport {
  double domestic_learning_total_s = 0.0;
  double per_image_identification_avg_s = 0.0;
  std::optional<double> domestic_learning_normalized;
  std::optional<double> per_image_identification_normalized;
};

// Methods without a learning phase report exactly 0 learning time.
// Normalised values divide by the base-classifier per-image time.
TimingReport MakeTimingReport(const TimingInput& input);

}  // namespace osl

#endif  // OSL_METRICS_H_
