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

#ifndef OSL_ERRORS_H_
#define OSL_ERRORS_H_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace osl {

// Base for every error raised by the library. Callers that only care about
// "something went wrong" catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-contract input (empty vectors, NaNs, bad labels...).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// Distribution parameters outside their domain (e.g. Weibull beta <= 0).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Not enough samples for the requested operation.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

struct ConvergenceStep {
  int iteration;
  double shape;
  double score;
};

// Maximum-likelihood iteration failed to converge or the likelihood has no
// finite maximum. Carries the iteration trace for diagnosis.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<ConvergenceStep> trace)
      : Error(what), trace_(std::move(trace)) {}

  const std::vector<ConvergenceStep>& trace() const { return trace_; }

 private:
  std::vector<ConvergenceStep> trace_;
};

// OpenMax calibration could not be completed for a class.
class CalibrationError : public Error {
 public:
  CalibrationError(const std::string& what, int class_id)
      : Error(what), class_id_(class_id) {}

  int class_id() const { return class_id_; }

 private:
  int class_id_;
};

// Toy classifier training diverged.
class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace osl

#endif  // OSL_ERRORS_H_
