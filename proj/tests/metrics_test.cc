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
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "osl/core.h"
#include "osl/errors.h"
#include "osl/metrics.h"
#include "osl/random.h"
#include "test_support.h"

namespace osl {
namespace {

using ::osl::testing::BruteForceQ1;
using ::osl::testing::QuietLogs;

std::vector<GroundTruth> Truths(const std::vector<int>& codes) {
  std::vector<GroundTruth> out;
  for (int c : codes) out.push_back(GroundTruth::FromCode(c));
  return out;
}

// The 5-sample toy: two correct class-1 samples, class 2 rejected, a
// rejected foreign sample and a fooling sample accepted as class 1.
MetricCounts ToyCounts() {
  return Tally(std::vector<int>{1, 1, 0, 0, 1}, Truths({1, 1, 2, 0, -1}), 2);
}

TEST(TallyTest, ToyExample) {
  const MetricCounts c = ToyCounts();
  EXPECT_EQ(c.tp, (std::vector<std::int64_t>{2, 0}));
  EXPECT_EQ(c.fn, (std::vector<std::int64_t>{0, 1}));
  EXPECT_EQ(c.fp, (std::vector<std::int64_t>{1, 0}));
  EXPECT_EQ(c.fp_u, 1);
  EXPECT_EQ(c.tp_u, 1);
  EXPECT_EQ(c.fn_u, 0);
  EXPECT_EQ(c.tp_f, 0);
  EXPECT_EQ(c.fn_f, 1);
}

TEST(TallyTest, PerfectDomestic) {
  const MetricCounts c = Tally(std::vector<int>{1, 2, 2, 3}, Truths({1, 2, 2, 3}), 3);
  EXPECT_EQ(c.tp, (std::vector<std::int64_t>{1, 2, 1}));
  EXPECT_EQ(c.fp, (std::vector<std::int64_t>{0, 0, 0}));
  EXPECT_EQ(c.fn, (std::vector<std::int64_t>{0, 0, 0}));
  EXPECT_EQ(c.fp_u + c.tp_u + c.fn_u + c.tp_f + c.fn_f, 0);
}

TEST(TallyTest, FoolingRejectedIsTrueFoolingOnly) {
  const MetricCounts c = Tally(std::vector<int>{0}, Truths({-1}), 3);
  EXPECT_EQ(c.tp_f, 1);
  EXPECT_EQ(c.fp_u, 0);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(c.fp[i], 0);
}

TEST(TallyTest, Errors) {
  EXPECT_THROW(Tally(std::vector<int>{3}, Truths({1}), 2), InvalidInputError);
  EXPECT_THROW(Tally(std::vector<int>{-1}, Truths({1}), 2), InvalidInputError);
  EXPECT_THROW(Tally(std::vector<int>{1, 1}, Truths({1}), 2), InvalidInputError);
  EXPECT_THROW(Tally(std::vector<int>{1}, Truths({4}), 2), InvalidInputError);
}

TEST(TallyTest, RecordOverload) {
  const std::vector<LogitRecord> records = {{"a", {1, 0}, GroundTruth::Domestic(2)},
                                            {"b", {1, 0}, GroundTruth::Foreign()}};
  const MetricCounts c = Tally(std::vector<int>{2, 0}, records, 2);
  EXPECT_EQ(c.tp[1], 1);
  EXPECT_EQ(c.tp_u, 1);
}

TEST(TallyProperty, ConservationAndMerge) {
  Rng rng(51);
  for (int trial = 0; trial < 10000; ++trial) {
    const int k = 1 + static_cast<int>(rng.Index(10));
    const std::size_t n = rng.Index(60);
    std::vector<int> truth(n), pred(n);
    for (std::size_t i = 0; i < n; ++i) {
      truth[i] = static_cast<int>(rng.Index(static_cast<std::size_t>(k) + 2)) - 1;
      pred[i] = static_cast<int>(rng.Index(static_cast<std::size_t>(k) + 1));
    }
    const std::vector<GroundTruth> truths = Truths(truth);
    const MetricCounts c = Tally(pred, truths, static_cast<std::size_t>(k));
    std::int64_t domestic = 0, foreign = 0, fooling = 0;
    for (int t : truth) {
      domestic += t > 0;
      foreign += t == 0;
      fooling += t < 0;
    }
    std::int64_t tp_fn = 0;
    for (int i = 0; i < k; ++i) tp_fn += c.tp[i] + c.fn[i];
    EXPECT_EQ(tp_fn, domestic);
    EXPECT_EQ(c.tp_u + c.fn_u, foreign);
    EXPECT_EQ(c.tp_f + c.fn_f, fooling);

    const std::size_t cut = n == 0 ? 0 : rng.Index(n + 1);
    MetricCounts merged =
        Tally(std::span<const int>(pred.data(), cut),
              std::span<const GroundTruth>(truths.data(), cut), static_cast<std::size_t>(k));
    merged += Tally(std::span<const int>(pred.data() + cut, n - cut),
                    std::span<const GroundTruth>(truths.data() + cut, n - cut),
                    static_cast<std::size_t>(k));
    EXPECT_EQ(merged, c);
  }
}

TEST(Q1Test, ToyExample) {
  const Q1Report r = ComputeQ1(ToyCounts());
  ASSERT_TRUE(r.per_class_f[0].has_value());
  EXPECT_NEAR(*r.per_class_f[0], 0.8, 1e-4);
  EXPECT_EQ(*r.per_class_f[1], 0.0);
  EXPECT_NEAR(r.f_d, 0.4, 1e-4);
  EXPECT_NEAR(r.p_o, 0.5, 1e-4);
  EXPECT_EQ(r.r_o, 0.5);
  EXPECT_NEAR(r.f_o, 0.5, 1e-4);
  EXPECT_NEAR(r.q1, 0.45, 1e-4);
}

TEST(Q1Test, PerfectPredictions) {
  std::vector<int> truth;
  for (int c = 1; c <= 3; ++c) truth.insert(truth.end(), 20, c);
  truth.insert(truth.end(), 10, 0);
  truth.insert(truth.end(), 10, -1);
  std::vector<int> pred = truth;
  for (int& p : pred) p = std::max(p, 0);
  const Q1Report r = ComputeQ1(Tally(pred, Truths(truth), 3));
  EXPECT_NEAR(r.q1, 1.0, 1e-3);
  EXPECT_LE(r.q1, 1.0);
}

TEST(Q1Test, EverythingRejectedOnDomesticSet) {
  QuietLogs quiet;
  const Q1Report r = ComputeQ1(Tally(std::vector<int>{0, 0, 0}, Truths({1, 2, 2}), 2));
  EXPECT_NEAR(r.f_d, 0.0, 1e-12);
  EXPECT_EQ(r.f_o, 0.0);
  EXPECT_EQ(r.r_o, 0.0);
  EXPECT_NEAR(r.q1, 0.0, 1e-12);
  EXPECT_GE(quiet.warnings(), 1);
}

TEST(Q1Test, AbsentClassExcludedAndLogged) {
  QuietLogs quiet;
  const Q1Report r = ComputeQ1(Tally(std::vector<int>{1, 0}, Truths({1, 0}), 3));
  EXPECT_TRUE(r.per_class_f[0].has_value());
  EXPECT_FALSE(r.per_class_f[1].has_value());
  EXPECT_FALSE(r.per_class_f[2].has_value());
  EXPECT_NEAR(r.f_d, *r.per_class_f[0], 1e-15);
  EXPECT_EQ(quiet.warnings(), 2);
}

TEST(Q1Property, MatchesBruteForce) {
  QuietLogs quiet;
  Rng rng(52);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 1 + static_cast<int>(rng.Index(10));
    const std::size_t n = 1 + rng.Index(1000);
    std::vector<int> truth(n), pred(n);
    for (std::size_t i = 0; i < n; ++i) {
      truth[i] = static_cast<int>(rng.Index(static_cast<std::size_t>(k) + 2)) - 1;
      pred[i] = static_cast<int>(rng.Index(static_cast<std::size_t>(k) + 1));
    }
    const Q1Report r = ComputeQ1(Tally(pred, Truths(truth), static_cast<std::size_t>(k)));
    EXPECT_NEAR(r.q1, BruteForceQ1(truth, pred, k, kDefaultEpsilonStab), 1e-12);
    EXPECT_GE(r.q1, 0.0);
    EXPECT_LE(r.q1, 1.0);
  }
}

TEST(CrIcTest, PublishedOpenMaxRow) {
  const Confusion published{19981, 4526, 25493, 1315, 13685, 3957, 11163};
  const MetricCounts counts = CountsFromConfusion(published);
  const Confusion c = CrIc(counts);
  EXPECT_EQ(c.correct, 19981);
  EXPECT_EQ(c.incorrect, 4526);
  EXPECT_EQ(c.domestic_rejected, 25493);
  EXPECT_EQ(c.fooling_as_domestic, 1315);
  EXPECT_EQ(c.foreign_as_domestic, 3957);
  EXPECT_EQ(c.Total(), 80120);
  const Accuracies acc = FaccCacc(counts);
  EXPECT_NEAR(acc.f_acc, (24507.0 + 13685 + 11163) / 80120, 1e-15);
  EXPECT_NEAR(acc.f_acc, 0.616, 1e-3);
  EXPECT_NEAR(*acc.c_acc, 0.815, 1e-3);
}

TEST(CrIcTest, PublishedExponentialLcCacc) {
  const Confusion published{17320, 4931, 27749, 0, 15000, 22132, 85868};
  EXPECT_NEAR(*FaccCacc(CountsFromConfusion(published)).c_acc, 0.778, 1e-3);
}

TEST(CrIcTest, ToyAndPerfect) {
  const Confusion toy = CrIc(ToyCounts());
  EXPECT_EQ(toy.correct, 2);
  EXPECT_EQ(toy.incorrect, 0);
  EXPECT_EQ(toy.domestic_rejected, 1);
  const MetricCounts perfect = Tally(std::vector<int>{1, 2, 0, 0}, Truths({1, 2, 0, -1}), 2);
  const Confusion c = CrIc(perfect);
  EXPECT_EQ(c.incorrect, 0);
  EXPECT_EQ(c.domestic_rejected, 0);
  const Accuracies acc = FaccCacc(perfect);
  EXPECT_EQ(acc.f_acc, 1.0);
  EXPECT_EQ(*acc.c_acc, 1.0);
}

TEST(CrIcTest, CaccAbsentWithoutDomesticPredictions) {
  const Accuracies acc = FaccCacc(Tally(std::vector<int>{0, 0}, Truths({1, 0}), 1));
  EXPECT_FALSE(acc.c_acc.has_value());
  EXPECT_EQ(acc.f_acc, 0.5);
}

TEST(CrIcProperty, MatchesDirectCounts) {
  Rng rng(53);
  for (int trial = 0; trial < 2000; ++trial) {
    const int k = 1 + static_cast<int>(rng.Index(8));
    const std::size_t n = 1 + rng.Index(80);
    std::vector<int> truth(n), pred(n);
    std::int64_t cr = 0, ic = 0, rej = 0, dom = 0, f_acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      truth[i] = static_cast<int>(rng.Index(static_cast<std::size_t>(k) + 2)) - 1;
      pred[i] = static_cast<int>(rng.Index(static_cast<std::size_t>(k) + 1));
      if (truth[i] > 0) {
        ++dom;
        cr += pred[i] == truth[i];
        ic += pred[i] > 0 && pred[i] != truth[i];
        rej += pred[i] == 0;
        f_acc += pred[i] > 0;
      } else {
        f_acc += pred[i] == 0;
      }
    }
    const MetricCounts counts = Tally(pred, Truths(truth), static_cast<std::size_t>(k));
    const Confusion c = CrIc(counts);
    EXPECT_EQ(c.correct, cr);
    EXPECT_EQ(c.incorrect, ic);
    EXPECT_EQ(c.domestic_rejected, rej);
    EXPECT_EQ(c.correct + c.incorrect + c.domestic_rejected, dom);
    EXPECT_EQ(FaccCacc(counts).f_acc, static_cast<double>(f_acc) / static_cast<double>(n));
  }
}

std::vector<PrPoint> Curve(const std::vector<double>& scores, const std::vector<bool>& pos) {
  std::unique_ptr<bool[]> flags(new bool[pos.size()]);
  for (std::size_t i = 0; i < pos.size(); ++i) flags[i] = pos[i];
  return PrCurve(scores, std::span<const bool>(flags.get(), pos.size()));
}

TEST(PrCurveTest, FourScoreExample) {
  const std::vector<PrPoint> p = Curve({0.9, 0.8, 0.7, 0.6}, {true, false, true, false});
  ASSERT_EQ(p.size(), 4u);
  const double expected[4][2] = {{0.5, 1.0}, {0.5, 0.5}, {1.0, 2.0 / 3.0}, {1.0, 0.5}};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_DOUBLE_EQ(p[i].recall, expected[i][0]);
    EXPECT_NEAR(p[i].precision, expected[i][1], 1e-15);
  }
  EXPECT_NEAR(p[2].precision, 0.667, 1e-3);
}

TEST(PrCurveTest, PerfectSeparationReachesCorner) {
  const std::vector<PrPoint> p = Curve({5, 4, 1, 0}, {true, true, false, false});
  bool corner = false;
  for (const PrPoint& q : p) corner |= q.recall == 1.0 && q.precision == 1.0;
  EXPECT_TRUE(corner);
  EXPECT_NEAR(AucPr(p), 1.0, 1e-9);
}

TEST(PrCurveTest, TiesMoveTogether) {
  const std::vector<PrPoint> p = Curve({2, 2, 2, 2, 2}, {true, false, false, true, false});
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].recall, 1.0);
  EXPECT_DOUBLE_EQ(p[0].precision, 0.4);
  EXPECT_DOUBLE_EQ(AucPr(p), 0.4);
}

TEST(PrCurveTest, Errors) {
  EXPECT_THROW(Curve({1, 2}, {false, false}), InvalidInputError);
  EXPECT_THROW(Curve({1}, {true, false}), InvalidInputError);
  EXPECT_THROW(AucPr(std::vector<PrPoint>{}), InvalidInputError);
}

TEST(AucTest, SinglePointIsRectangle) {
  EXPECT_DOUBLE_EQ(AucPr(std::vector<PrPoint>{{0.0, 1.0, 0.3}}), 0.3);
}

// Integrates the piecewise-linear PR interpolant with a fine midpoint rule.
double DenseAuc(std::vector<PrPoint> points) {
  std::stable_sort(points.begin(), points.end(),
                   [](const PrPoint& a, const PrPoint& b) { return a.recall < b.recall; });
  points.insert(points.begin(), {0.0, 0.0, points.front().precision});
  const int steps = 1 << 20;
  double area = 0.0;
  std::size_t seg = 0;
  for (int s = 0; s < steps; ++s) {
    const double r = (s + 0.5) / steps;
    while (seg + 1 < points.size() && points[seg + 1].recall < r) ++seg;
    if (seg + 1 >= points.size()) break;
    const PrPoint& a = points[seg];
    const PrPoint& b = points[seg + 1];
    const double t = (r - a.recall) / (b.recall - a.recall);
    area += (a.precision + t * (b.precision - a.precision)) / steps;
  }
  return area;
}

TEST(AucTest, FourScoreExampleMatchesDenseIntegration) {
  const std::vector<PrPoint> p = Curve({0.9, 0.8, 0.7, 0.6}, {true, false, true, false});
  EXPECT_NEAR(AucPr(p), DenseAuc(p), 1e-9);
  EXPECT_NEAR(AucPr(p), 0.5 + 0.5 * (0.5 + 2.0 / 3.0) / 2, 1e-15);
}

TEST(AucProperty, InvariantUnderMonotoneTransforms) {
  Rng rng(54);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.Index(200);
    std::vector<double> s(n);
    std::vector<bool> pos(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng.Index(40)) / 4.0 - 5.0;
      pos[i] = rng.Uniform01() < 0.3;
    }
    pos[0] = true;
    const double base = AucPr(Curve(s, pos));
    std::vector<double> t1 = s, t2 = s, t3 = s;
    for (double& x : t1) x = std::exp(x);
    for (double& x : t2) x = x * x * x + 3 * x;
    for (double& x : t3) x = 2.5 * x - 7;
    EXPECT_NEAR(AucPr(Curve(t1, pos)), base, 1e-12);
    EXPECT_NEAR(AucPr(Curve(t2, pos)), base, 1e-12);
    EXPECT_NEAR(AucPr(Curve(t3, pos)), base, 1e-12);
    EXPECT_GE(base, 0.0);
    EXPECT_LE(base, 1.0);
  }
}

ScenarioPools Pools(std::size_t domestic, std::size_t fooling, std::size_t classes,
                    std::size_t per_class) {
  ScenarioPools pools;
  for (std::size_t i = 0; i < domestic; ++i) {
    pools.domestic.push_back({"d" + std::to_string(i), {1.0}, GroundTruth::Domestic(1)});
  }
  for (std::size_t i = 0; i < fooling; ++i) {
    pools.fooling.push_back({"g" + std::to_string(i), {1.0}, GroundTruth::Fooling()});
  }
  pools.foreign_by_class.resize(classes);
  for (std::size_t c = 0; c < classes; ++c) {
    for (std::size_t i = 0; i < per_class; ++i) {
      pools.foreign_by_class[c].push_back(
          {"f" + std::to_string(c) + "-" + std::to_string(i), {0.0}, GroundTruth::Foreign()});
    }
  }
  return pools;
}

TEST(ScenarioTest, PublishedCases) {
  const ScenarioPools pools = Pools(50000, 15000, 360, 300);
  const std::size_t per_class[4] = {42, 97, 236, 300};
  const std::size_t foreign[4] = {15120, 34920, 84960, 108000};
  const double ratio[4] = {50000.0 / 80120, 50000.0 / 99920, 50000.0 / 149960,
                           50000.0 / 173000};
  for (int i = 0; i < 4; ++i) {
    const ScenarioSpec spec{50000, 15000, per_class[i], 360};
    const Scenario s = BuildScenario(spec, pools, 1);
    EXPECT_EQ(spec.NumForeign(), foreign[i]);
    EXPECT_EQ(s.records.size(), 65000 + foreign[i]);
    EXPECT_DOUBLE_EQ(s.comfort_ratio, ratio[i]);
  }
  EXPECT_NEAR(50000.0 / 80120, 0.625, 1e-3);
  EXPECT_NEAR(50000.0 / 99920, 0.500, 1e-3);
  EXPECT_NEAR(50000.0 / 149960, 0.333, 1e-3);
}

TEST(ScenarioTest, DrawsWithoutReplacementDeterministically) {
  const ScenarioPools pools = Pools(40, 10, 3, 20);
  const ScenarioSpec spec{25, 10, 7, 3};
  const Scenario a = BuildScenario(spec, pools, 5);
  EXPECT_EQ(a.records, BuildScenario(spec, pools, 5).records);
  EXPECT_NE(a.records, BuildScenario(spec, pools, 6).records);
  std::vector<std::string> ids;
  for (const LogitRecord& r : a.records) ids.push_back(r.sample_id);
  std::sort(ids.begin(), ids.end());
  EXPECT_EQ(std::adjacent_find(ids.begin(), ids.end()), ids.end());
  for (int c = 0; c < 3; ++c) {
    const auto n = std::count_if(a.records.begin(), a.records.end(), [&](const LogitRecord& r) {
      return r.sample_id.rfind("f" + std::to_string(c) + "-", 0) == 0;
    });
    EXPECT_EQ(n, 7);
  }
}

TEST(ScenarioTest, OnlyDomestic) {
  const Scenario s = BuildScenario({10, 0, 0, 0}, Pools(10, 0, 0, 0), 1);
  EXPECT_EQ(s.comfort_ratio, 1.0);
}

TEST(ScenarioTest, DeficientGroupIsNamed) {
  const ScenarioPools pools = Pools(10, 5, 2, 4);
  auto message = [&](const ScenarioSpec& spec) {
    try {
      BuildScenario(spec, pools, 1);
    } catch (const InsufficientDataError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message({11, 0, 0, 0}).find("domestic"), std::string::npos);
  EXPECT_NE(message({1, 6, 0, 0}).find("fooling"), std::string::npos);
  EXPECT_NE(message({1, 1, 5, 2}).find("foreign"), std::string::npos);
  EXPECT_NE(message({1, 1, 1, 3}).find("foreign"), std::string::npos);
}

TEST(TimingTest, LearningTimeByMethod) {
  const TimingReport lc = MakeTimingReport({false, 12.0, 2.0, 100, std::nullopt});
  EXPECT_EQ(lc.domestic_learning_total_s, 0.0);
  EXPECT_DOUBLE_EQ(lc.per_image_identification_avg_s, 0.02);
  const TimingReport om = MakeTimingReport({true, 12.0, 2.0, 100, std::nullopt});
  EXPECT_GT(om.domestic_learning_total_s, 0.0);
}

TEST(TimingTest, SelfNormalizationIsOne) {
  const TimingReport r = MakeTimingReport({false, 0.0, 0.5, 100, 0.005});
  EXPECT_NEAR(*r.per_image_identification_normalized, 1.0, 1e-12);
}

}  // namespace
}  // namespace osl
