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

#include "osl/openmax.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "json.hpp"
#include "osl/errors.h"
#include "osl/parallel.h"

namespace osl {

std::string ToString(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::kEuclidean:
      return "euclidean";
    case DistanceKind::kCosine:
      return "cosine";
    case DistanceKind::kEuCos:
      return "eucos";
  }
  return "eucos";
}

std::string ToString(AlphaRule rule) {
  return rule == AlphaRule::kPaper ? "paper" : "reference";
}

DistanceKind ParseDistanceKind(std::string_view name) {
  if (name == "euclidean") return DistanceKind::kEuclidean;
  if (name == "cosine") return DistanceKind::kCosine;
  if (name == "eucos") return DistanceKind::kEuCos;
  throw InvalidInputError("unknown distance '" + std::string(name) + "'");
}

AlphaRule ParseAlphaRule(std::string_view name) {
  if (name == "paper") return AlphaRule::kPaper;
  if (name == "reference") return AlphaRule::kReference;
  throw InvalidInputError("unknown alpha rule '" + std::string(name) + "'");
}

double Distance(std::span<const double> a, std::span<const double> mu,
                const DistanceConfig& config) {
  if (a.size() != mu.size() || a.empty()) {
    throw InvalidInputError("distance: vectors must be non-empty and equal length");
  }
  double diff2 = 0.0, dot = 0.0, na2 = 0.0, nm2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - mu[i];
    diff2 += d * d;
    dot += a[i] * mu[i];
    na2 += a[i] * a[i];
    nm2 += mu[i] * mu[i];
  }
  const double euclidean = std::sqrt(diff2);
  if (config.kind == DistanceKind::kEuclidean) return euclidean;
  if (na2 == 0.0 || nm2 == 0.0) {
    throw InvalidInputError("cosine distance of a zero-norm vector");
  }
  const double cosine = 1.0 - dot / (std::sqrt(na2) * std::sqrt(nm2));
  if (config.kind == DistanceKind::kCosine) return cosine;
  return euclidean / config.eucos_scale + cosine;
}

void OpenMaxModel::Validate() const {
  if (num_classes == 0 || classes.size() != num_classes) {
    throw InvalidInputError("OpenMax model must hold one entry per class");
  }
  if (!(distance.eucos_scale > 0.0)) {
    throw InvalidInputError("eucos scale must be positive");
  }
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const OpenMaxClass& c = classes[k];
    if (c.id != static_cast<int>(k) + 1) {
      throw InvalidInputError("OpenMax classes must be ordered 1..K");
    }
    if (c.centroid.size() != num_classes) {
      throw InvalidInputError("centroid of class " + std::to_string(c.id) +
                              " has wrong dimension");
    }
    RequireFinite(c.centroid, "centroid");
    try {
      c.weibull.Validate();
    } catch (const ParameterError& e) {
      throw InvalidInputError("class " + std::to_string(c.id) + ": " + e.what());
    }
  }
}

std::string OpenMaxModel::ToJson() const {
  nlohmann::ordered_json doc;
  doc["K"] = num_classes;
  doc["eta"] = eta;
  doc["distance"] = ToString(distance.kind);
  doc["eucos_scale"] = distance.eucos_scale;
  doc["alpha_rule"] = ToString(alpha_rule);
  doc["classes"] = nlohmann::ordered_json::array();
  for (const OpenMaxClass& c : classes) {
    nlohmann::ordered_json entry;
    entry["id"] = c.id;
    entry["centroid"] = c.centroid;
    entry["tau"] = c.weibull.tau;
    entry["beta"] = c.weibull.beta;
    entry["lambda"] = c.weibull.lambda;
    doc["classes"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

OpenMaxModel OpenMaxModel::FromJson(const std::string& text) {
  OpenMaxModel model;
  try {
    const nlohmann::json doc = nlohmann::json::parse(text);
    model.num_classes = doc.at("K").get<std::size_t>();
    model.eta = doc.at("eta").get<std::size_t>();
    model.distance.kind = ParseDistanceKind(doc.at("distance").get<std::string>());
    model.distance.eucos_scale = doc.value("eucos_scale", 200.0);
    model.alpha_rule = ParseAlphaRule(doc.value("alpha_rule", std::string("paper")));
    for (const auto& entry : doc.at("classes")) {
      OpenMaxClass c;
      c.id = entry.at("id").get<int>();
      c.centroid = entry.at("centroid").get<std::vector<double>>();
      c.weibull.tau = entry.at("tau").get<double>();
      c.weibull.beta = entry.at("beta").get<double>();
      c.weibull.lambda = entry.at("lambda").get<double>();
      model.classes.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("malformed OpenMax model: ") + e.what());
  }
  model.Validate();
  return model;
}

OpenMaxModel Calibrate(std::span<const LogitRecord> training,
                       const CalibrationOptions& options) {
  const std::size_t k = ValidateRecords(training);
  if (k == 0) throw InvalidInputError("calibration needs training records");
  if (options.eta < 2) throw InvalidInputError("tail size eta must be >= 2");

  std::vector<std::vector<std::size_t>> correct(k);
  for (std::size_t n = 0; n < training.size(); ++n) {
    const LogitRecord& r = training[n];
    if (!r.truth.is_domestic()) {
      throw InvalidInputError("calibration record '" + r.sample_id +
                              "' is not domestic");
    }
    const int predicted = static_cast<int>(ArgMax(r.logits)) + 1;
    if (predicted == r.truth.class_id()) correct[predicted - 1].push_back(n);
  }

  OpenMaxModel model;
  model.num_classes = k;
  model.eta = options.eta;
  model.distance = options.distance;
  model.alpha_rule = options.alpha_rule;
  model.classes.resize(k);

  std::vector<std::optional<std::string>> failures(k);
  ParallelFor(k, [&](std::size_t c) {
    const int id = static_cast<int>(c) + 1;
    OpenMaxClass& out = model.classes[c];
    out.id = id;
    const auto& members = correct[c];
    if (members.size() < options.eta) {
      failures[c] = "class " + std::to_string(id) + " has " +
                    std::to_string(members.size()) +
                    " correctly classified samples, needs eta = " +
                    std::to_string(options.eta);
      return;
    }
    out.centroid.assign(k, 0.0);
    for (std::size_t n : members) {
      for (std::size_t i = 0; i < k; ++i) out.centroid[i] += training[n].logits[i];
    }
    for (double& v : out.centroid) v /= static_cast<double>(members.size());

    std::vector<double> distances;
    distances.reserve(members.size());
    try {
      for (std::size_t n : members) {
        distances.push_back(
            Distance(training[n].logits, out.centroid, options.distance));
      }
      out.weibull = FitWeibullTail(distances, options.eta);
    } catch (const Error& e) {
      failures[c] = "class " + std::to_string(id) + ": " + e.what();
    }
  });
  for (std::size_t c = 0; c < k; ++c) {
    if (failures[c]) {
      throw CalibrationError(*failures[c], static_cast<int>(c) + 1);
    }
  }
  return model;
}

OpenMaxScore Recalibrate(std::span<const double> a,
                         std::span<const double> omega, std::size_t top_m,
                         AlphaRule rule) {
  RequireFinite(a, "openmax activations");
  const std::size_t k = a.size();
  if (omega.size() != k) throw InvalidInputError("omega must have K entries");
  if (top_m < 1 || top_m > k) {
    throw InvalidInputError("top-M must lie in 1..K");
  }
  const std::vector<int> ranks = RankDescending(a);
  const double m = static_cast<double>(top_m);

  OpenMaxScore score;
  score.recalibrated.assign(a.begin(), a.end());
  score.omega.assign(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    if (ranks[j] > static_cast<int>(top_m)) continue;
    const double r = static_cast<double>(ranks[j]);
    const double alpha = rule == AlphaRule::kPaper ? (m - r) / m : (m + 1.0 - r) / m;
    score.omega[j] = omega[j];
    score.recalibrated[j] = a[j] * (1.0 - alpha * omega[j]);
    score.foreign_activation += a[j] - score.recalibrated[j];
  }
  std::vector<double> extended;
  extended.reserve(k + 1);
  extended.push_back(score.foreign_activation);
  extended.insert(extended.end(), score.recalibrated.begin(),
                  score.recalibrated.end());
  score.probs = Softmax(extended);
  return score;
}

OpenMaxScore ScoreOpenMax(std::span<const double> a, const OpenMaxModel& model,
                          std::size_t top_m) {
  if (a.size() != model.num_classes) {
    throw InvalidInputError("logit vector has " + std::to_string(a.size()) +
                            " entries, model expects " +
                            std::to_string(model.num_classes));
  }
  RequireFinite(a, "openmax activations");
  if (top_m < 1 || top_m > a.size()) {
    throw InvalidInputError("top-M must lie in 1..K");
  }
  const std::vector<int> ranks = RankDescending(a);
  std::vector<double> omega(a.size(), 0.0);
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (ranks[j] > static_cast<int>(top_m)) continue;
    const OpenMaxClass& c = model.classes[j];
    omega[j] = WeibullCdf(Distance(a, c.centroid, model.distance), c.weibull);
  }
  return Recalibrate(a, omega, top_m, model.alpha_rule);
}

int DecideOpenMax(std::span<const double> probs, double epsilon_pred) {
  if (!(epsilon_pred >= 0.0 && epsilon_pred <= 1.0)) {
    throw InvalidInputError("epsilon_pred must lie in [0, 1]");
  }
  const std::size_t best = ArgMax(probs);
  if (best >= 1 && probs[best] >= epsilon_pred) return static_cast<int>(best);
  return 0;
}

int PredictOpenMax(std::span<const double> a, const OpenMaxModel& model,
                   std::size_t top_m, double epsilon_pred) {
  return DecideOpenMax(ScoreOpenMax(a, model, top_m).probs, epsilon_pred);
}

}  // namespace osl
