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

#include "osl/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "osl/errors.h"
#include "osl/logging.h"
#include "osl/random.h"

namespace osl {
namespace {

double SafeRatio(double num, double den, bool warn, const char* what) {
  if (den == 0.0) {
    if (warn) LogWarning(std::string(what) + " is 0/0; using 0");
    return 0.0;
  }
  return num / den;
}

// Sorted indices of a uniformly drawn subset of size `take` from [0, n).
std::vector<std::size_t> DrawSubset(std::size_t n, std::size_t take, Rng& rng) {
  std::vector<std::size_t> perm = rng.Permutation(n);
  perm.resize(take);
  std::sort(perm.begin(), perm.end());
  return perm;
}

}  // namespace

MetricCounts::MetricCounts(std::size_t num_classes, double epsilon_stab)
    : tp(num_classes, 0),
      fp(num_classes, 0),
      fn(num_classes, 0),
      epsilon_stab(epsilon_stab) {}

std::int64_t MetricCounts::NumDomestic() const {
  std::int64_t n = 0;
  for (std::size_t i = 0; i < tp.size(); ++i) n += tp[i] + fn[i];
  return n;
}

void MetricCounts::Add(const GroundTruth& truth, int prediction,
                       std::int64_t weight) {
  const int k = static_cast<int>(num_classes());
  if (prediction < 0 || prediction > k) {
    throw InvalidInputError("prediction " + std::to_string(prediction) +
                            " outside 0.." + std::to_string(k));
  }
  switch (truth.kind()) {
    case GroundTruth::Kind::kDomestic: {
      const int i = truth.class_id();
      if (i > k) {
        throw InvalidInputError("truth class " + std::to_string(i) +
                                " outside 1.." + std::to_string(k));
      }
      if (prediction == i) {
        tp[i - 1] += weight;
      } else {
        fn[i - 1] += weight;
        if (prediction == 0) {
          fp_u += weight;
        } else {
          fp[prediction - 1] += weight;
        }
      }
      break;
    }
    case GroundTruth::Kind::kForeign:
      if (prediction == 0) {
        tp_u += weight;
      } else {
        fn_u += weight;
        fp[prediction - 1] += weight;
      }
      break;
    case GroundTruth::Kind::kFooling:
      if (prediction == 0) {
        tp_f += weight;
      } else {
        fn_f += weight;
        fp[prediction - 1] += weight;
      }
      break;
  }
}

MetricCounts& MetricCounts::operator+=(const MetricCounts& other) {
  if (other.num_classes() != num_classes()) {
    throw InvalidInputError("cannot merge tallies with different K");
  }
  for (std::size_t i = 0; i < tp.size(); ++i) {
    tp[i] += other.tp[i];
    fp[i] += other.fp[i];
    fn[i] += other.fn[i];
  }
  tp_u += other.tp_u;
  fn_u += other.fn_u;
  fp_u += other.fp_u;
  tp_f += other.tp_f;
  fn_f += other.fn_f;
  return *this;
}

MetricCounts Tally(std::span<const int> predictions,
                   std::span<const GroundTruth> truths, std::size_t num_classes,
                   double epsilon_stab) {
  if (predictions.size() != truths.size()) {
    throw InvalidInputError("predictions and truths are not aligned");
  }
  MetricCounts counts(num_classes, epsilon_stab);
  for (std::size_t n = 0; n < truths.size(); ++n) {
    counts.Add(truths[n], predictions[n]);
  }
  return counts;
}

MetricCounts Tally(std::span<const int> predictions,
                   std::span<const LogitRecord> records, std::size_t num_classes,
                   double epsilon_stab) {
  std::vector<GroundTruth> truths;
  truths.reserve(records.size());
  for (const LogitRecord& r : records) truths.push_back(r.truth);
  return Tally(predictions, truths, num_classes, epsilon_stab);
}

Q1Report ComputeQ1(const MetricCounts& counts, bool warn) {
  const double e = counts.epsilon_stab;
  Q1Report report;
  report.per_class_f.resize(counts.num_classes());
  double sum_f = 0.0;
  std::size_t present = 0;
  for (std::size_t i = 0; i < counts.num_classes(); ++i) {
    const double tp = static_cast<double>(counts.tp[i]);
    const double fp = static_cast<double>(counts.fp[i]);
    const double fn = static_cast<double>(counts.fn[i]);
    if (tp + fn == 0.0) {
      if (warn) {
        LogWarning("class " + std::to_string(i + 1) +
                   " has no test samples; excluded from F_d");
      }
      continue;
    }
    const double p = tp / (tp + fp + e);
    const double r = tp / (tp + fn);
    const double f = 2.0 * p * r / (p + r + e);
    report.per_class_f[i] = f;
    sum_f += f;
    ++present;
  }
  report.f_d = SafeRatio(sum_f, static_cast<double>(present), warn, "F_d");

  const double hits = static_cast<double>(counts.tp_u + counts.tp_f);
  report.p_o = hits / (hits + static_cast<double>(counts.fp_u) + e);
  report.r_o = SafeRatio(hits, hits + static_cast<double>(counts.fn_u + counts.fn_f),
                         warn, "R_o");
  report.f_o = 2.0 * report.p_o * report.r_o / (report.p_o + report.r_o + e);
  report.q1 = 0.5 * (report.f_d + report.f_o);
  return report;
}

std::int64_t Confusion::Total() const {
  return correct + incorrect + domestic_rejected + fooling_as_domestic +
         fooling_as_foreign + foreign_as_domestic + foreign_as_foreign;
}

Confusion CrIc(const MetricCounts& counts) {
  Confusion c;
  c.correct = std::accumulate(counts.tp.begin(), counts.tp.end(), std::int64_t{0});
  c.incorrect = std::accumulate(counts.fp.begin(), counts.fp.end(), std::int64_t{0}) -
                counts.fn_u - counts.fn_f;
  c.domestic_rejected = counts.fp_u;
  c.fooling_as_domestic = counts.fn_f;
  c.fooling_as_foreign = counts.tp_f;
  c.foreign_as_domestic = counts.fn_u;
  c.foreign_as_foreign = counts.tp_u;
  return c;
}

MetricCounts CountsFromConfusion(const Confusion& c, double epsilon_stab) {
  // Class 1 holds every domestic sample; misclassifications go to class 2.
  MetricCounts counts(2, epsilon_stab);
  counts.tp[0] = c.correct;
  counts.fn[0] = c.incorrect + c.domestic_rejected;
  counts.fp[1] = c.incorrect;
  counts.fp_u = c.domestic_rejected;
  counts.fn_u = c.foreign_as_domestic;
  counts.tp_u = c.foreign_as_foreign;
  counts.fn_f = c.fooling_as_domestic;
  counts.tp_f = c.fooling_as_foreign;
  counts.fp[0] = c.foreign_as_domestic + c.fooling_as_domestic;
  return counts;
}

Accuracies FaccCacc(const MetricCounts& counts) {
  const Confusion c = CrIc(counts);
  const std::int64_t total = c.Total();
  if (total == 0) throw InvalidInputError("accuracies of an empty tally");
  Accuracies acc;
  acc.f_acc = static_cast<double>(c.correct + c.incorrect + c.foreign_as_foreign +
                                  c.fooling_as_foreign) /
              static_cast<double>(total);
  if (c.correct + c.incorrect > 0) {
    acc.c_acc = static_cast<double>(c.correct) /
                static_cast<double>(c.correct + c.incorrect);
  }
  return acc;
}

std::vector<PrPoint> PrCurve(std::span<const double> scores,
                             std::span<const bool> positives) {
  if (scores.size() != positives.size() || scores.empty()) {
    throw InvalidInputError("PR curve needs aligned, non-empty inputs");
  }
  for (double s : scores) {
    if (std::isnan(s)) throw InvalidInputError("PR curve score is NaN");
  }
  const auto total_pos = std::count(positives.begin(), positives.end(), true);
  if (total_pos == 0) throw InvalidInputError("PR curve needs at least one positive");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  std::vector<PrPoint> points;
  std::int64_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double threshold = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == threshold; ++i) {
      if (positives[order[i]]) {
        ++tp;
      } else {
        ++fp;
      }
    }
    points.push_back({threshold, static_cast<double>(tp) / static_cast<double>(total_pos),
                      static_cast<double>(tp) / static_cast<double>(tp + fp)});
  }
  return points;
}

double AucPr(std::span<const PrPoint> points) {
  if (points.empty()) throw InvalidInputError("AUC of an empty PR curve");
  std::vector<PrPoint> sorted(points.begin(), points.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const PrPoint& a, const PrPoint& b) { return a.recall < b.recall; });
  double area = 0.0;
  double prev_recall = 0.0;
  double prev_precision = sorted.front().precision;
  for (const PrPoint& p : sorted) {
    area += (p.recall - prev_recall) * (p.precision + prev_precision) / 2.0;
    prev_recall = p.recall;
    prev_precision = p.precision;
  }
  return area;
}

double ScenarioSpec::ComfortRatio() const {
  if (Total() == 0) throw InvalidInputError("scenario has no samples");
  return static_cast<double>(n_domestic) / static_cast<double>(Total());
}

Scenario BuildScenario(const ScenarioSpec& spec, const ScenarioPools& pools,
                       std::uint64_t seed) {
  if (pools.domestic.size() < spec.n_domestic) {
    throw InsufficientDataError("domestic pool has " +
                                std::to_string(pools.domestic.size()) +
                                " samples, scenario needs " +
                                std::to_string(spec.n_domestic));
  }
  if (pools.fooling.size() < spec.n_fooling) {
    throw InsufficientDataError("fooling pool has " +
                                std::to_string(pools.fooling.size()) +
                                " samples, scenario needs " +
                                std::to_string(spec.n_fooling));
  }
  if (pools.foreign_by_class.size() < spec.n_foreign_classes) {
    throw InsufficientDataError("foreign pool has " +
                                std::to_string(pools.foreign_by_class.size()) +
                                " classes, scenario needs " +
                                std::to_string(spec.n_foreign_classes));
  }
  for (std::size_t c = 0; c < spec.n_foreign_classes; ++c) {
    if (pools.foreign_by_class[c].size() < spec.images_per_foreign_class) {
      throw InsufficientDataError(
          "foreign class " + std::to_string(c + 1) + " has " +
          std::to_string(pools.foreign_by_class[c].size()) +
          " samples, scenario needs " +
          std::to_string(spec.images_per_foreign_class));
    }
  }

  Scenario scenario;
  scenario.comfort_ratio = spec.ComfortRatio();
  scenario.records.reserve(spec.Total());
  auto take = [&](const std::vector<LogitRecord>& pool, std::size_t n,
                  std::uint64_t stream) {
    Rng rng(DeriveSeed(seed, stream));
    for (std::size_t i : DrawSubset(pool.size(), n, rng)) {
      scenario.records.push_back(pool[i]);
    }
  };
  take(pools.domestic, spec.n_domestic, 0);
  take(pools.fooling, spec.n_fooling, 1);
  for (std::size_t c = 0; c < spec.n_foreign_classes; ++c) {
    take(pools.foreign_by_class[c], spec.images_per_foreign_class, 2 + c);
  }
  return scenario;
}

TimingReport MakeTimingReport(const TimingInput& input) {
  TimingReport report;
  report.domestic_learning_total_s =
      input.requires_domestic_learning ? input.domestic_learning_s : 0.0;
  report.per_image_identification_avg_s =
      input.num_images == 0 ? 0.0
                            : input.identification_total_s /
                                  static_cast<double>(input.num_images);
  if (input.base_per_image_s && *input.base_per_image_s > 0.0) {
    report.domestic_learning_normalized =
        report.domestic_learning_total_s / *input.base_per_image_s;
    report.per_image_identification_normalized =
        report.per_image_identification_avg_s / *input.base_per_image_s;
  }
  return report;
}

}  // namespace osl
