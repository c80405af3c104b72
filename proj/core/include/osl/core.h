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

#ifndef OSL_CORE_H_
#define OSL_CORE_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace osl {

// Ground-truth tag of a test sample. Domestic classes are numbered 1..K;
// label 0 is reserved for "foreign" in predictions.
class GroundTruth {
 public:
  enum class Kind { kDomestic, kForeign, kFooling };

  static GroundTruth Domestic(int class_id);
  static GroundTruth Foreign() { return GroundTruth(Kind::kForeign, 0); }
  static GroundTruth Fooling() { return GroundTruth(Kind::kFooling, 0); }

  // File encoding: 1..K domestic, 0 foreign, -1 fooling.
  static GroundTruth FromCode(int code);
  int code() const;

  Kind kind() const { return kind_; }
  bool is_domestic() const { return kind_ == Kind::kDomestic; }
  // Domestic class index; 0 for foreign and fooling samples.
  int class_id() const { return class_id_; }

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;

 private:
  GroundTruth(Kind kind, int class_id) : kind_(kind), class_id_(class_id) {}

  Kind kind_;
  int class_id_;
};

// One sample's penultimate (logit) vector with its tag.
struct LogitRecord {
  std::string sample_id;
  std::vector<double> logits;
  GroundTruth truth = GroundTruth::Foreign();

  friend bool operator==(const LogitRecord&, const LogitRecord&) = default;
};

// One raw input (feature vector) with its tag; the precursor of a
// LogitRecord before it passes through a classifier.
struct InputRecord {
  std::string sample_id;
  std::vector<double> features;
  GroundTruth truth = GroundTruth::Foreign();

  friend bool operator==(const InputRecord&, const InputRecord&) = default;
};

// Shift-stable softmax. Throws InvalidInputError on empty or non-finite input.
std::vector<double> Softmax(std::span<const double> a);

// 1-based descending ranks; ties go to the lower index first.
std::vector<int> RankDescending(std::span<const double> a);

// 0-based index of the maximum; first occurrence wins.
std::size_t ArgMax(std::span<const double> a);

// Throws InvalidInputError unless a is non-empty and every entry is finite.
void RequireFinite(std::span<const double> a, const char* what);

// Checks a dataset of logit records: all vectors share one length K, all
// entries are finite, domestic labels lie in 1..K. Returns K (0 if empty).
std::size_t ValidateRecords(std::span<const LogitRecord> records);

}  // namespace osl

#endif  // OSL_CORE_H_
