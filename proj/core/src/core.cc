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

#include "osl/core.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "osl/errors.h"

namespace osl {

GroundTruth GroundTruth::Domestic(int class_id) {
  if (class_id < 1) {
    throw InvalidInputError("domestic class index must be >= 1, got " +
                            std::to_string(class_id));
  }
  return GroundTruth(Kind::kDomestic, class_id);
}

GroundTruth GroundTruth::FromCode(int code) {
  if (code == 0) return Foreign();
  if (code == -1) return Fooling();
  if (code >= 1) return Domestic(code);
  throw InvalidInputError("invalid truth code " + std::to_string(code));
}

int GroundTruth::code() const {
  switch (kind_) {
    case Kind::kDomestic:
      return class_id_;
    case Kind::kForeign:
      return 0;
    case Kind::kFooling:
      return -1;
  }
  return 0;
}

void RequireFinite(std::span<const double> a, const char* what) {
  if (a.empty()) {
    throw InvalidInputError(std::string(what) + ": empty vector");
  }
  for (double v : a) {
    if (!std::isfinite(v)) {
      throw InvalidInputError(std::string(what) + ": non-finite entry");
    }
  }
}

std::vector<double> Softmax(std::span<const double> a) {
  RequireFinite(a, "softmax");
  const double max = *std::max_element(a.begin(), a.end());
  std::vector<double> out(a.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = std::exp(a[i] - max);
    sum += out[i];
  }
  for (double& v : out) v /= sum;
  return out;
}

std::vector<int> RankDescending(std::span<const double> a) {
  if (a.empty()) throw InvalidInputError("rank_descending: empty vector");
  std::vector<std::size_t> order(a.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a[i] > a[j]; });
  std::vector<int> ranks(a.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    ranks[order[r]] = static_cast<int>(r) + 1;
  }
  return ranks;
}

std::size_t ArgMax(std::span<const double> a) {
  if (a.empty()) throw InvalidInputError("argmax: empty vector");
  return static_cast<std::size_t>(std::max_element(a.begin(), a.end()) -
                                  a.begin());
}

std::size_t ValidateRecords(std::span<const LogitRecord> records) {
  if (records.empty()) return 0;
  const std::size_t k = records.front().logits.size();
  for (const LogitRecord& r : records) {
    if (r.logits.size() != k) {
      throw InvalidInputError("record '" + r.sample_id + "' has " +
                              std::to_string(r.logits.size()) +
                              " logits, expected " + std::to_string(k));
    }
    RequireFinite(r.logits, ("record '" + r.sample_id + "'").c_str());
    if (r.truth.is_domestic() && r.truth.class_id() > static_cast<int>(k)) {
      throw InvalidInputError("record '" + r.sample_id + "' has class " +
                              std::to_string(r.truth.class_id()) +
                              " outside 1.." + std::to_string(k));
    }
  }
  return k;
}

}  // namespace osl
