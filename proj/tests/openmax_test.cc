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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "osl/core.h"
#include "osl/errors.h"
#include "osl/openmax.h"
#include "osl/random.h"
#include "osl/synth.h"
#include "osl/weibull.h"
#include "test_support.h"

namespace osl {
namespace {

using ::osl::testing::RandomVector;

// Model with explicit centroids and per-class Weibull parameters.
OpenMaxModel MakeModel(const std::vector<std::vector<double>>& centroids,
                       const std::vector<WeibullParams>& weibull,
                       AlphaRule rule = AlphaRule::kPaper) {
  OpenMaxModel model;
  model.num_classes = centroids.size();
  model.alpha_rule = rule;
  for (std::size_t k = 0; k < centroids.size(); ++k) {
    model.classes.push_back({static_cast<int>(k) + 1, centroids[k], weibull[k]});
  }
  return model;
}

TEST(DistanceTest, EuCosExamples) {
  const std::vector<double> mu = {0.3, -1.2, 4.0};
  EXPECT_NEAR(EuCosDistance(mu, mu), 0.0, 1e-15);
  EXPECT_NEAR(EuCosDistance(std::vector<double>{1, 0}, std::vector<double>{0, 1}),
              std::sqrt(2.0) / 200 + 1, 1e-15);
  EXPECT_NEAR(std::sqrt(2.0) / 200 + 1, 1.007071, 1e-6);
  EXPECT_NEAR(EuCosDistance(std::vector<double>{2, 0}, std::vector<double>{1, 0}), 0.005,
              1e-15);
}

TEST(DistanceTest, VariantsAndErrors) {
  const std::vector<double> a = {3, 4};
  const std::vector<double> b = {0, 0};
  EXPECT_DOUBLE_EQ(Distance(a, b, {DistanceKind::kEuclidean, 200}), 5.0);
  EXPECT_THROW(Distance(a, b, {DistanceKind::kCosine, 200}), InvalidInputError);
  EXPECT_THROW(Distance(a, b, {DistanceKind::kEuCos, 200}), InvalidInputError);
  EXPECT_THROW(Distance(a, std::vector<double>{1}, {}), InvalidInputError);
  EXPECT_NEAR(Distance(a, std::vector<double>{-3, -4}, {DistanceKind::kCosine, 200}), 2.0,
              1e-15);
  EXPECT_NEAR(Distance(a, std::vector<double>{0, 4}, {DistanceKind::kEuCos, 10}),
              0.3 + (1 - 0.8), 1e-15);
}

TEST(DistanceTest, NamesRoundTrip) {
  for (DistanceKind k : {DistanceKind::kEuclidean, DistanceKind::kCosine, DistanceKind::kEuCos}) {
    EXPECT_EQ(ParseDistanceKind(ToString(k)), k);
  }
  for (AlphaRule r : {AlphaRule::kPaper, AlphaRule::kReference}) {
    EXPECT_EQ(ParseAlphaRule(ToString(r)), r);
  }
  EXPECT_THROW(ParseDistanceKind("manhattan"), InvalidInputError);
  EXPECT_THROW(ParseAlphaRule("other"), InvalidInputError);
}

TEST(RecalibrateTest, HandExample) {
  const std::vector<double> a = {3, 2, 1};
  const std::vector<double> omega = {0.5, 0.8, 0.9};
  const OpenMaxScore s = Recalibrate(a, omega, 2, AlphaRule::kPaper);
  EXPECT_DOUBLE_EQ(s.recalibrated[0], 2.25);
  EXPECT_DOUBLE_EQ(s.recalibrated[1], 2.0);
  EXPECT_DOUBLE_EQ(s.recalibrated[2], 1.0);
  EXPECT_DOUBLE_EQ(s.foreign_activation, 0.75);
  const std::vector<double> expected = Softmax(std::vector<double>{0.75, 2.25, 2, 1});
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(s.probs[i], expected[i], 1e-15);
  EXPECT_EQ(s.omega[2], 0.0);
}

TEST(RecalibrateTest, ReferenceRuleWeightsRankM) {
  const std::vector<double> a = {3, 2, 1};
  const std::vector<double> omega = {0.5, 0.5, 0.5};
  const OpenMaxScore s = Recalibrate(a, omega, 2, AlphaRule::kReference);
  // alpha = [1, 0.5] for ranks 1 and 2.
  EXPECT_DOUBLE_EQ(s.recalibrated[0], 1.5);
  EXPECT_DOUBLE_EQ(s.recalibrated[1], 1.5);
  EXPECT_DOUBLE_EQ(s.recalibrated[2], 1.0);
  EXPECT_DOUBLE_EQ(s.foreign_activation, 2.0);
}

TEST(RecalibrateTest, RejectsBadTopM) {
  const std::vector<double> a = {1, 2};
  const std::vector<double> omega = {0, 0};
  EXPECT_THROW(Recalibrate(a, omega, 0, AlphaRule::kPaper), InvalidInputError);
  EXPECT_THROW(Recalibrate(a, omega, 3, AlphaRule::kPaper), InvalidInputError);
}

TEST(ScoreOpenMaxTest, NoAdjustmentWhenOmegaZero) {
  const OpenMaxModel model =
      MakeModel({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                std::vector<WeibullParams>(3, WeibullParams{1e6, 2.0, 1.0}));
  const std::vector<double> a = {0.4, 2.0, -1.0};
  const OpenMaxScore s = ScoreOpenMax(a, model, 3);
  EXPECT_EQ(s.recalibrated, a);
  EXPECT_EQ(s.foreign_activation, 0.0);
  const std::vector<double> expected = Softmax(std::vector<double>{0, 0.4, 2.0, -1.0});
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(s.probs[i], expected[i], 1e-15);
}

TEST(ScoreOpenMaxTest, FarInputMovesActivationToForeign) {
  const OpenMaxModel model =
      MakeModel({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                std::vector<WeibullParams>(3, WeibullParams{0.0, 2.0, 1e-3}));
  const std::vector<double> a = {50, 30, 10};
  const OpenMaxScore s = ScoreOpenMax(a, model, 3);
  double expected = 0.0;
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_NEAR(s.omega[j], 1.0, 1e-12);
    expected += (3.0 - static_cast<double>(j + 1)) / 3.0 * a[j];
  }
  EXPECT_GT(s.foreign_activation, 0.0);
  EXPECT_NEAR(s.foreign_activation, expected, 1e-12);
}

TEST(ScoreOpenMaxTest, DimensionMismatch) {
  const OpenMaxModel model =
      MakeModel({{1, 0}, {0, 1}}, std::vector<WeibullParams>(2, WeibullParams{}));
  EXPECT_THROW(ScoreOpenMax(std::vector<double>{1, 2, 3}, model, 2), InvalidInputError);
}

TEST(DecideOpenMaxTest, Examples) {
  EXPECT_EQ(DecideOpenMax(std::vector<double>{0.9, 0.05, 0.05}, 0.0), 0);
  EXPECT_EQ(DecideOpenMax(std::vector<double>{0.9, 0.05, 0.05}, 0.5), 0);
  EXPECT_EQ(DecideOpenMax(std::vector<double>{0.1, 0.7, 0.2}, 0.5), 1);
  EXPECT_EQ(DecideOpenMax(std::vector<double>{0.1, 0.47, 0.43}, 0.5), 0);
  EXPECT_THROW(DecideOpenMax(std::vector<double>{0.5, 0.5}, 1.5), InvalidInputError);
}

TEST(OpenMaxModelTest, JsonRoundTrip) {
  Rng rng(3);
  OpenMaxModel model = MakeModel(
      {RandomVector(rng, 3, -5, 5), RandomVector(rng, 3, -5, 5), RandomVector(rng, 3, -5, 5)},
      {{0.1 / 3, 1.7, 0.2}, {0.0, 0.9, 1.0 / 7}, {1e-7, 12.5, 3.3}}, AlphaRule::kReference);
  model.eta = 17;
  model.distance = {DistanceKind::kCosine, 123.0};
  const std::string text = model.ToJson();
  const OpenMaxModel back = OpenMaxModel::FromJson(text);
  EXPECT_EQ(back.ToJson(), text);
  EXPECT_EQ(back.num_classes, 3u);
  EXPECT_EQ(back.eta, 17u);
  EXPECT_EQ(back.alpha_rule, AlphaRule::kReference);
  EXPECT_EQ(back.distance.kind, DistanceKind::kCosine);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(back.classes[k].centroid, model.classes[k].centroid);
    EXPECT_EQ(back.classes[k].weibull, model.classes[k].weibull);
  }
  EXPECT_NE(text.find("\"K\""), std::string::npos);
  EXPECT_NE(text.find("\"alpha_rule\""), std::string::npos);
  EXPECT_THROW(OpenMaxModel::FromJson("{\"K\": 2}"), InvalidInputError);
}

std::vector<LogitRecord> ClusterRecords(int classes, int per_class, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<LogitRecord> records;
  for (int c = 1; c <= classes; ++c) {
    for (int n = 0; n < per_class; ++n) {
      std::vector<double> a(static_cast<std::size_t>(classes));
      for (double& x : a) x = rng.Normal();
      a[static_cast<std::size_t>(c - 1)] += 8.0;
      records.push_back({"r" + std::to_string(records.size()), a, GroundTruth::Domestic(c)});
    }
  }
  return records;
}

TEST(CalibrateTest, TailIsTheEtaLargestDistances) {
  const std::vector<LogitRecord> records = ClusterRecords(3, 50, 8);
  const OpenMaxModel model = Calibrate(records, {20, {}, AlphaRule::kPaper});
  for (int c = 1; c <= 3; ++c) {
    std::vector<const LogitRecord*> correct;
    for (const LogitRecord& r : records) {
      if (r.truth.class_id() == c && static_cast<int>(ArgMax(r.logits)) + 1 == c) {
        correct.push_back(&r);
      }
    }
    ASSERT_EQ(correct.size(), 50u);
    std::vector<double> mean(3, 0.0);
    for (const LogitRecord* r : correct) {
      for (std::size_t i = 0; i < 3; ++i) mean[i] += r->logits[i];
    }
    for (double& m : mean) m /= static_cast<double>(correct.size());
    const std::vector<double>& mu = model.classes[c - 1].centroid;
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(mu[i], mean[i], 1e-12);
    std::vector<double> d;
    for (const LogitRecord* r : correct) d.push_back(EuCosDistance(r->logits, mu));
    std::sort(d.begin(), d.end(), std::greater<>());
    d.resize(20);
    EXPECT_EQ(model.classes[c - 1].weibull, FitWeibullTail(d, 20));
  }
}

TEST(CalibrateTest, ClassWithTooFewCorrectSamples) {
  std::vector<LogitRecord> records = ClusterRecords(3, 30, 9);
  // Flip most of class 2 so its correct count drops below eta.
  for (LogitRecord& r : records) {
    if (r.truth.class_id() == 2 && r.sample_id.back() != '0') std::swap(r.logits[0], r.logits[1]);
  }
  try {
    Calibrate(records, {20, {}, AlphaRule::kPaper});
    FAIL() << "expected a calibration error";
  } catch (const CalibrationError& e) {
    EXPECT_EQ(e.class_id(), 2);
    EXPECT_NE(std::string(e.what()).find("class 2"), std::string::npos) << e.what();
  }
}

TEST(CalibrateTest, IdenticalSamplesGiveDegenerateTail) {
  std::vector<LogitRecord> records;
  for (int n = 0; n < 25; ++n) {
    records.push_back({"s" + std::to_string(n), {2.0, -1.0}, GroundTruth::Domestic(1)});
    records.push_back({"t" + std::to_string(n), {-1.0 + 0.01 * n, 2.0}, GroundTruth::Domestic(2)});
  }
  try {
    Calibrate(records, {20, {}, AlphaRule::kPaper});
    FAIL() << "expected a calibration error";
  } catch (const CalibrationError& e) {
    EXPECT_EQ(e.class_id(), 1);
    EXPECT_NE(std::string(e.what()).find("degenerate"), std::string::npos) << e.what();
  }
}

TEST(CalibrateTest, RejectsNonDomesticRecords) {
  std::vector<LogitRecord> records = ClusterRecords(2, 25, 10);
  records.push_back({"f", {0, 0}, GroundTruth::Foreign()});
  EXPECT_THROW(Calibrate(records, {20, {}, AlphaRule::kPaper}), InvalidInputError);
}

TEST(CalibrateTest, CentroidsOnSyntheticData) {
  SyntheticDatasetSpec spec;
  spec.dim = 4;
  spec.num_domestic_classes = 2;
  spec.samples_per_class = 200;
  spec.separation = 10;
  spec.seed = 7;
  const SyntheticDataset data = GenerateDataset(spec);
  TrainingOptions options;
  options.epochs = 20;
  options.seed = 7;
  const TrainedClassifier trained = TrainClassifier(data.train, options);
  const std::vector<LogitRecord> logits = ExtractLogits(trained.model, data.train);
  const OpenMaxModel model = Calibrate(logits, {20, {}, AlphaRule::kPaper});
  for (int c = 1; c <= 2; ++c) {
    // Streaming (Welford) mean over the correctly classified samples.
    std::vector<double> mean(2, 0.0);
    double count = 0;
    for (const LogitRecord& r : logits) {
      if (r.truth.class_id() != c || static_cast<int>(ArgMax(r.logits)) + 1 != c) continue;
      count += 1;
      for (std::size_t i = 0; i < 2; ++i) mean[i] += (r.logits[i] - mean[i]) / count;
    }
    for (std::size_t i = 0; i < 2; ++i) {
      EXPECT_NEAR(model.classes[c - 1].centroid[i], mean[i], 0.05);
    }
  }
}

struct RandomCase {
  OpenMaxModel model;
  std::vector<double> a;
  std::size_t top_m;
};

RandomCase DrawCase(Rng& rng) {
  const std::size_t k = 2 + rng.Index(9);
  std::vector<std::vector<double>> centroids;
  std::vector<WeibullParams> params;
  for (std::size_t c = 0; c < k; ++c) {
    centroids.push_back(RandomVector(rng, k, -10, 10));
    params.push_back({rng.Uniform(0, 0.5), rng.Uniform(0.3, 8), rng.Uniform(0.05, 2)});
  }
  const AlphaRule rule = rng.Index(2) ? AlphaRule::kPaper : AlphaRule::kReference;
  RandomCase rc{MakeModel(centroids, params, rule), RandomVector(rng, k, -30, 30),
                1 + rng.Index(k)};
  return rc;
}

TEST(OpenMaxProperty, ProbabilitiesAndConservation) {
  Rng rng(77);
  for (int trial = 0; trial < 10000; ++trial) {
    const RandomCase rc = DrawCase(rng);
    const OpenMaxScore s = ScoreOpenMax(rc.a, rc.model, rc.top_m);
    ASSERT_EQ(s.probs.size(), rc.a.size() + 1);
    EXPECT_NEAR(std::accumulate(s.probs.begin(), s.probs.end(), 0.0), 1.0, 1e-9);
    double before = 0.0, scale = 0.0;
    for (double x : rc.a) {
      before += x;
      scale += std::abs(x);
    }
    const double after =
        s.foreign_activation + std::accumulate(s.recalibrated.begin(), s.recalibrated.end(), 0.0);
    EXPECT_NEAR(after, before, 1e-12 * scale);
    for (double w : s.omega) {
      EXPECT_GE(w, 0.0);
      EXPECT_LE(w, 1.0);
    }
  }
}

TEST(OpenMaxProperty, OmegaMonotoneInDistance) {
  Rng rng(78);
  for (int trial = 0; trial < 10000; ++trial) {
    const WeibullParams p{rng.Uniform(0, 1), rng.Uniform(0.2, 10), rng.Uniform(0.01, 3)};
    const double d1 = rng.Uniform(0, 5);
    const double d2 = d1 + rng.Uniform(0, 1);
    EXPECT_LE(WeibullCdf(d1, p), WeibullCdf(d2, p));
  }
}

TEST(OpenMaxProperty, NoAdjustmentAgreesWithArgmax) {
  Rng rng(79);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t k = 2 + rng.Index(9);
    const std::vector<double> a = RandomVector(rng, k, -5, 5);
    const std::vector<double> omega(k, 0.0);
    const OpenMaxScore s = Recalibrate(a, omega, k, AlphaRule::kPaper);
    const std::size_t best = ArgMax(s.probs);
    if (best == 0) continue;
    EXPECT_EQ(DecideOpenMax(s.probs, 0.0), static_cast<int>(ArgMax(a)) + 1);
  }
}

TEST(OpenMaxProperty, ForeignSetMonotoneInEpsilon) {
  Rng rng(80);
  for (int trial = 0; trial < 2000; ++trial) {
    const RandomCase rc = DrawCase(rng);
    const OpenMaxScore s = ScoreOpenMax(rc.a, rc.model, rc.top_m);
    bool foreign = false;
    for (double eps = 0.0; eps <= 1.0; eps += 0.05) {
      const bool now = DecideOpenMax(s.probs, eps) == 0;
      EXPECT_TRUE(!foreign || now);
      foreign = now;
    }
  }
}

}  // namespace
}  // namespace osl
