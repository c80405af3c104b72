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

#ifndef OSL_SYNTH_H_
#define OSL_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "osl/core.h"

namespace osl {

// Gaussian class clusters inside the unit cube. Domestic classes are 1..K;
// foreign clusters are drawn from the same centroid process but are never
// part of the training split.
struct SyntheticDatasetSpec {
  std::size_t dim = 8;
  std::size_t num_domestic_classes = 5;
  std::size_t num_foreign_classes = 0;
  std::size_t samples_per_class = 100;       // training samples per domestic class
  std::size_t test_samples_per_class = 100;  // held-out samples per cluster
  // Minimum inter-centroid distance in units of the cluster standard
  // deviation. 0 collapses every cluster onto the cube centre.
  double separation = 6.0;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct SyntheticDataset {
  std::vector<InputRecord> train;
  std::vector<InputRecord> test_domestic;
  // Sample ids are "foreign<c>-<n>" so the per-class pools can be rebuilt
  // from a flat file (see ForeignGroup).
  std::vector<InputRecord> test_foreign;
  std::vector<std::vector<double>> centroids;  // domestic first, then foreign
  double cluster_std = 0.0;
};

SyntheticDataset GenerateDataset(const SyntheticDatasetSpec& spec);

// The group key of a sample id: the text before its last '-'.
std::string ForeignGroup(const std::string& sample_id);

// One hidden layer network: x -> relu(W1 x + b1) -> W2 h + b2 (logits).
// Parameters are stored flat as [W1 (H x D, row-major), b1, W2 (K x H), b2].
class ToyClassifier {
 public:
  ToyClassifier() = default;
  ToyClassifier(std::size_t input_dim, std::size_t hidden,
                std::size_t num_classes);

  // He-initialised weights, zero biases.
  static ToyClassifier Initialize(std::size_t input_dim, std::size_t hidden,
                                  std::size_t num_classes, std::uint64_t seed);

  std::size_t input_dim() const { return input_dim_; }
  std::size_t hidden() const { return hidden_; }
  std::size_t num_classes() const { return num_classes_; }

  std::span<double> parameters() { return params_; }
  std::span<const double> parameters() const { return params_; }

  std::vector<double> Logits(std::span<const double> x) const;
  std::vector<double> Probabilities(std::span<const double> x) const;
  int Predict(std::span<const double> x) const;  // 1..K

  // Mean cross-entropy over domestic samples of `batch`; if `gradient` is
  // non-null it receives d(loss)/d(parameters).
  double LossAndGradient(std::span<const InputRecord> batch,
                         std::vector<double>* gradient) const;

  // Softmax output f_k(x) and its gradient with respect to x.
  double ProbabilityAndInputGradient(std::span<const double> x,
                                     int target_class,
                                     std::vector<double>* gradient) const;

  std::string ToJson() const;
  static ToyClassifier FromJson(const std::string& text);

 private:
  std::size_t input_dim_ = 0;
  std::size_t hidden_ = 0;
  std::size_t num_classes_ = 0;
  std::vector<double> params_;
};

struct TrainingOptions {
  std::size_t hidden = 64;
  std::size_t epochs = 40;
  std::size_t batch_size = 32;
  double learning_rate = 0.05;
  double momentum = 0.9;
  double validation_fraction = 0.1;
  std::uint64_t seed = 0;

  std::string Describe() const;
};

struct TrainingReport {
  double final_loss = 0.0;
  double train_accuracy = 0.0;
  double validation_accuracy = 0.0;
};

struct TrainedClassifier {
  ToyClassifier model;
  TrainingReport report;
};

// Mini-batch SGD with momentum on cross-entropy. A seeded shuffle holds out
// validation_fraction of the data. Throws TrainingError (message includes the
// hyperparameters) when the loss becomes non-finite.
TrainedClassifier TrainClassifier(std::span<const InputRecord> data,
                                  const TrainingOptions& options);

// Fraction of domestic records classified as their true class.
double Accuracy(const ToyClassifier& model, std::span<const InputRecord> data);

// Penultimate vectors (pre-softmax) with ids and tags carried over.
std::vector<LogitRecord> ExtractLogits(const ToyClassifier& model,
                                       std::span<const InputRecord> inputs);

struct CraftSpec {
  int target_class = 1;
  double alpha = 0.9;
  double step_size = 0.05;
  std::size_t max_iters = 500;
  // Per-feature box; empty means [0, 1]^D.
  std::vector<double> lower;
  std::vector<double> upper;
};

struct CraftResult {
  bool success = false;
  std::vector<double> input;  // x + r
  std::vector<double> base;   // x
  double confidence = 0.0;    // f_k(x + r)
  std::size_t iterations = 0;
  int target_class = 0;
  int base_class = 0;         // 0 for noise bases

  double PerturbationNorm() const;
};

// Projected gradient ascent on f_k(x + r) from `base`, with normalised steps
// of length step_size that are halved whenever f_k fails to improve. Stops as
// soon as f_k > alpha (success) or after max_iters (failure).
CraftResult CraftFrom(const ToyClassifier& model, std::vector<double> base,
                      int base_class, const CraftSpec& spec);

// Base drawn uniformly from the domain box.
CraftResult CraftFooling(const ToyClassifier& model, const CraftSpec& spec,
                         std::uint64_t seed);

// Base is a real sample; its class must differ from the target.
CraftResult CraftAdversarial(const ToyClassifier& model,
                             const InputRecord& base, const CraftSpec& spec);

// `count` fooling attempts with targets cycling through 1..K and per-attempt
// seeds DeriveSeed(seed, i); runs in parallel, result order is fixed.
std::vector<CraftResult> CraftFoolingBatch(const ToyClassifier& model,
                                           const CraftSpec& spec,
                                           std::size_t count,
                                           std::uint64_t seed);

// `count` adversarial attempts: base drawn from the domestic `pool`, target
// drawn uniformly from the other classes.
std::vector<CraftResult> CraftAdversarialBatch(
    const ToyClassifier& model, std::span<const InputRecord> pool,
    const CraftSpec& spec, std::size_t count, std::uint64_t seed);

// Successful crafts as fooling-tagged inputs with ids "<prefix>-<i>-t<k>".
std::vector<InputRecord> CraftedInputs(std::span<const CraftResult> results,
                                       const std::string& prefix);

}  // namespace osl

#endif  // OSL_SYNTH_H_
