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

#include "osl/weibull.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "osl/errors.h"
#include "osl/random.h"

namespace osl {
namespace {

constexpr double kScoreTolerance = 1e-10;
constexpr int kMaxIterations = 200;
constexpr double kLocationGap = 1e-6;
constexpr int kLocationGrid = 41;

// Profile score g(b) = S1/S0 - 1/b - mean(ln y) and its derivative, with the
// weights y^b rescaled by max(y)^b to stay finite for large b.
struct ProfileScore {
  double value;
  double slope;
  double weight_mean;  // mean of (y / max y)^b
};

ProfileScore EvaluateScore(std::span<const double> log_y, double log_max,
                           double mean_log, double b) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (double ly : log_y) {
    const double w = std::exp(b * (ly - log_max));
    s0 += w;
    s1 += w * ly;
    s2 += w * ly * ly;
  }
  const double m1 = s1 / s0;
  const double var = std::max(0.0, s2 / s0 - m1 * m1);
  return {m1 - 1.0 / b - mean_log, var + 1.0 / (b * b),
          s0 / static_cast<double>(log_y.size())};
}

double ProfileLogLikelihood(std::span<const double> x, double tau) {
  try {
    const WeibullParams p = FitWeibullMle(x, tau);
    return WeibullLogLikelihood(x, p);
  } catch (const ConvergenceError&) {
    return -std::numeric_limits<double>::infinity();
  }
}

}  // namespace

void WeibullParams::Validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ParameterError("Weibull shape must be positive and finite");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ParameterError("Weibull scale must be positive and finite");
  }
  if (!std::isfinite(tau)) {
    throw ParameterError("Weibull location must be finite");
  }
}

double WeibullCdf(double x, const WeibullParams& p) {
  p.Validate();
  if (!(x > p.tau)) return 0.0;
  const double z = (x - p.tau) / p.lambda;
  return -std::expm1(-std::pow(z, p.beta));
}

double WeibullQuantile(double u, const WeibullParams& p) {
  p.Validate();
  if (!(u >= 0.0 && u < 1.0)) {
    throw InvalidInputError("Weibull quantile needs u in [0, 1)");
  }
  return p.tau + p.lambda * std::pow(-std::log1p(-u), 1.0 / p.beta);
}

double WeibullLogLikelihood(std::span<const double> x, const WeibullParams& p) {
  p.Validate();
  const double log_shape = std::log(p.beta);
  const double log_scale = std::log(p.lambda);
  double total = 0.0;
  for (double v : x) {
    if (!(v > p.tau)) return -std::numeric_limits<double>::infinity();
    const double log_z = std::log(v - p.tau) - log_scale;
    total += log_shape - log_scale + (p.beta - 1.0) * log_z -
             std::exp(p.beta * log_z);
  }
  return total;
}

WeibullParams FitWeibullMle(std::span<const double> x, double tau) {
  if (x.size() < 2) {
    throw InsufficientDataError("Weibull fit needs at least 2 points");
  }
  if (!std::isfinite(tau)) throw InvalidInputError("Weibull location must be finite");
  std::vector<double> log_y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !(x[i] > tau)) {
      throw InvalidInputError(
          "Weibull fit needs finite data strictly above the location");
    }
    log_y[i] = std::log(x[i] - tau);
  }
  const auto [min_it, max_it] = std::minmax_element(log_y.begin(), log_y.end());
  const double log_min = *min_it;
  const double log_max = *max_it;
  if (!(log_max > log_min)) {
    throw ConvergenceError("degenerate tail: all values identical, no MLE", {});
  }
  double mean_log = 0.0;
  for (double ly : log_y) mean_log += ly;
  mean_log /= static_cast<double>(log_y.size());

  // g is increasing in b with g(0+) = -inf and g(inf) = log_max - mean_log > 0,
  // so the root is unique; [lo, hi] always brackets it.
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  double b = 1.0;
  std::vector<ConvergenceStep> trace;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const ProfileScore s = EvaluateScore(log_y, log_max, mean_log, b);
    trace.push_back({iter, b, s.value});
    if (std::abs(s.value) <= kScoreTolerance) {
      WeibullParams p;
      p.tau = tau;
      p.beta = b;
      p.lambda = std::exp(log_max) * std::pow(s.weight_mean, 1.0 / b);
      p.Validate();
      return p;
    }
    if (s.value < 0.0) {
      lo = b;
    } else {
      hi = b;
    }
    double next = b - s.value / s.slope;
    if (!std::isfinite(next) || next <= lo || next >= hi) {
      next = std::isinf(hi) ? 2.0 * b : 0.5 * (lo + hi);
    }
    if (next == b) break;  // bracket collapsed to one double
    b = next;
  }
  throw ConvergenceError("Weibull MLE did not converge in " +
                             std::to_string(kMaxIterations) + " iterations",
                         std::move(trace));
}

std::vector<double> LargestTail(std::span<const double> values,
                                std::size_t eta) {
  if (eta > values.size()) {
    throw InsufficientDataError("tail size " + std::to_string(eta) +
                                " exceeds sample count " +
                                std::to_string(values.size()));
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return std::vector<double>(sorted.end() - static_cast<std::ptrdiff_t>(eta),
                             sorted.end());
}

double TailLocationUpperBound(std::span<const double> tail) {
  const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
  return *lo - kLocationGap * (*hi - *lo);
}

WeibullParams FitWeibullTail(std::span<const double> distances,
                             std::size_t eta) {
  if (eta < 2) throw InvalidInputError("Weibull tail size must be >= 2");
  for (double d : distances) {
    if (!std::isfinite(d) || d < 0.0) {
      throw InvalidInputError("distances must be finite and non-negative");
    }
  }
  const std::vector<double> tail = LargestTail(distances, eta);
  if (!(tail.back() > tail.front())) {
    throw ConvergenceError("degenerate tail: all values identical, no MLE", {});
  }
  const double upper = TailLocationUpperBound(tail);
  const double lower = std::min(0.0, upper);
  if (!(upper > lower)) return FitWeibullMle(tail, upper);

  auto profile = [&](double tau) { return ProfileLogLikelihood(tail, tau); };

  // Coarse scan, then golden-section refinement around the best grid point.
  const double step = (upper - lower) / (kLocationGrid - 1);
  std::vector<double> grid(kLocationGrid);
  int best = 0;
  for (int i = 0; i < kLocationGrid; ++i) {
    const double tau = (i == kLocationGrid - 1) ? upper : lower + step * i;
    grid[i] = profile(tau);
    if (grid[i] > grid[best]) best = i;
  }
  double best_tau = (best == kLocationGrid - 1) ? upper : lower + step * best;
  double best_value = grid[best];
  if (!std::isfinite(best_value)) {
    throw ConvergenceError("no location gives a finite Weibull likelihood", {});
  }

  double a = lower + step * std::max(best - 1, 0);
  double b = std::min(upper, lower + step * std::min(best + 1, kLocationGrid - 1));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = profile(c);
  double fd = profile(d);
  const double tol = 1e-12 * std::max(1.0, std::abs(upper));
  for (int iter = 0; iter < 200 && (b - a) > tol; ++iter) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = profile(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = profile(d);
    }
  }
  const double refined = fc >= fd ? c : d;
  const double refined_value = std::max(fc, fd);
  if (refined_value > best_value) {
    best_tau = refined;
    best_value = refined_value;
  }
  return FitWeibullMle(tail, best_tau);
}

std::vector<double> SampleWeibull(const WeibullParams& p, std::size_t n,
                                  std::uint64_t seed) {
  p.Validate();
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& v : out) v = WeibullQuantile(rng.Uniform01(), p);
  return out;
}

double KolmogorovSmirnov(std::span<const double> sample,
                         const WeibullParams& p) {
  if (sample.empty()) throw InvalidInputError("KS statistic of empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double stat = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = WeibullCdf(sorted[i], p);
    stat = std::max({stat, f - static_cast<double>(i) / n,
                     static_cast<double>(i + 1) / n - f});
  }
  return stat;
}

}  // namespace osl
