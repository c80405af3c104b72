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

#ifndef OSL_WEIBULL_H_
#define OSL_WEIBULL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace osl {

// Shifted (three-parameter) Weibull distribution:
//   F(x) = 1 - exp(-((x - tau) / lambda)^beta)  for x > tau, 0 otherwise.
struct WeibullParams {
  double tau = 0.0;     // location, same units as the data
  double beta = 1.0;    // shape
  double lambda = 1.0;  // scale, same units as the data

  // Throws ParameterError unless beta > 0, lambda > 0 and tau is finite.
  void Validate() const;

  friend bool operator==(const WeibullParams&, const WeibullParams&) = default;
};

// CDF with the argument clamped at the location: returns 0 for x <= tau.
double WeibullCdf(double x, const WeibullParams& p);

// Inverse CDF for u in [0, 1).
double WeibullQuantile(double u, const WeibullParams& p);

// Log-likelihood of `x` under `p`; -inf if any point lies at or below tau.
double WeibullLogLikelihood(std::span<const double> x, const WeibullParams& p);

// Two-parameter maximum-likelihood fit of (beta, lambda) with the location
// held at `tau`. Every x must exceed tau.
//
// Solves the profile score equation
//   sum(y^b ln y) / sum(y^b) - 1/b - mean(ln y) = 0,   y = x - tau,
// by Newton's method from b = 1, falling back to bisection whenever a Newton
// step leaves the current sign bracket. lambda then follows in closed form.
// Throws ConvergenceError (with trace) if |score| <= 1e-10 is not reached
// within 200 iterations, and for zero-variance samples.
WeibullParams FitWeibullMle(std::span<const double> x, double tau);

// The `eta` largest values, sorted ascending.
std::vector<double> LargestTail(std::span<const double> values,
                                std::size_t eta);

// Location used for a tail: just below its smallest value.
//   upper = min(tail) - 1e-6 * (max(tail) - min(tail))
double TailLocationUpperBound(std::span<const double> tail);

// Fits the eta largest distances. The location is the profile-likelihood
// maximiser over [min(0, upper), upper], with upper from
// TailLocationUpperBound; for tails whose likelihood increases towards the
// data (the usual case for extreme distances) this is exactly `upper`.
//
// Errors: InvalidInputError for negative or non-finite distances or eta < 2,
// InsufficientDataError when eta exceeds the sample count, ConvergenceError
// for degenerate (constant) tails.
WeibullParams FitWeibullTail(std::span<const double> distances,
                             std::size_t eta);

// Deterministic inverse-CDF sampler: tau + lambda * (-ln(1 - u))^(1/beta).
std::vector<double> SampleWeibull(const WeibullParams& p, std::size_t n,
                                  std::uint64_t seed);

// Kolmogorov-Smirnov statistic sup |F_n(x) - F(x)| of a sample against p.
double KolmogorovSmirnov(std::span<const double> sample,
                         const WeibullParams& p);

}  // namespace osl

#endif  // OSL_WEIBULL_H_
