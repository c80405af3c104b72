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

#include "osl/synth.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "json.hpp"
#include "osl/errors.h"
#include "osl/parallel.h"
#include "osl/random.h"

namespace osl {
namespace {

// Stream ids for DeriveSeed so each split draws from its own generator.
constexpr std::uint64_t kCentroidStream = 0;
constexpr std::uint64_t kTrainStream = 1 << 20;
constexpr std::uint64_t kTestStream = 2 << 20;

std::vector<double> DrawPoint(const std::vector<double>& centroid, double sd,
                              Rng& rng) {
  std::vector<double> x(centroid.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = std::clamp(centroid[i] + sd * rng.Normal(), 0.0, 1.0);
  }
  return x;
}

// Views into the flat parameter vector.
struct Layout {
  std::size_t d, h, k;
  std::size_t w1() const { return 0; }
  std::size_t b1() const { return h * d; }
  std::size_t w2() const { return h * d + h; }
  std::size_t b2() const { return h * d + h + k * h; }
  std::size_t size() const { return h * d + h + k * h + k; }
};

struct Activations {
  std::vector<double> pre;     // W1 x + b1
  std::vector<double> hidden;  // relu(pre)
  std::vector<double> logits;
};

Activations Forward(std::span<const double> p, const Layout& l,
                    std::span<const double> x) {
  Activations act;
  act.pre.resize(l.h);
  act.hidden.resize(l.h);
  act.logits.resize(l.k);
  for (std::size_t j = 0; j < l.h; ++j) {
    double s = p[l.b1() + j];
    const double* row = &p[l.w1() + j * l.d];
    for (std::size_t i = 0; i < l.d; ++i) s += row[i] * x[i];
    act.pre[j] = s;
    act.hidden[j] = s > 0.0 ? s : 0.0;
  }
  for (std::size_t c = 0; c < l.k; ++c) {
    double s = p[l.b2() + c];
    const double* row = &p[l.w2() + c * l.h];
    for (std::size_t j = 0; j < l.h; ++j) s += row[j] * act.hidden[j];
    act.logits[c] = s;
  }
  return act;
}

// Adds d(-log softmax_y)/d(params) to grad; returns the sample loss.
double AccumulateGradient(std::span<const double> p, const Layout& l,
                          std::span<const double> x, int label,
                          std::vector<double>* grad) {
  const Activations act = Forward(p, l, x);
  const double max = *std::max_element(act.logits.begin(), act.logits.end());
  double sum = 0.0;
  for (double z : act.logits) sum += std::exp(z - max);
  const double log_norm = max + std::log(sum);
  const double loss = log_norm - act.logits[label - 1];
  if (grad == nullptr) return loss;

  std::vector<double>& g = *grad;
  std::vector<double> dz(l.k);
  for (std::size_t c = 0; c < l.k; ++c) {
    dz[c] = std::exp(act.logits[c] - log_norm) -
            (static_cast<int>(c) + 1 == label ? 1.0 : 0.0);
  }
  std::vector<double> dpre(l.h, 0.0);
  for (std::size_t c = 0; c < l.k; ++c) {
    g[l.b2() + c] += dz[c];
    const double* row = &p[l.w2() + c * l.h];
    double* grow = &g[l.w2() + c * l.h];
    for (std::size_t j = 0; j < l.h; ++j) {
      grow[j] += dz[c] * act.hidden[j];
      dpre[j] += dz[c] * row[j];
    }
  }
  for (std::size_t j = 0; j < l.h; ++j) {
    if (act.pre[j] <= 0.0) continue;
    g[l.b1() + j] += dpre[j];
    double* grow = &g[l.w1() + j * l.d];
    for (std::size_t i = 0; i < l.d; ++i) grow[i] += dpre[j] * x[i];
  }
  return loss;
}

void CheckInput(const ToyClassifier& model, std::span<const double> x) {
  if (x.size() != model.input_dim()) {
    throw InvalidInputError("input has " + std::to_string(x.size()) +
                            " features, model expects " +
                            std::to_string(model.input_dim()));
  }
}

int DomesticLabel(const InputRecord& r, std::size_t num_classes) {
  if (!r.truth.is_domestic() ||
      r.truth.class_id() > static_cast<int>(num_classes)) {
    throw InvalidInputError("sample '" + r.sample_id +
                            "' is not a domestic sample of this model");
  }
  return r.truth.class_id();
}

}  // namespace

void SyntheticDatasetSpec::Validate() const {
  if (dim < 2) throw InvalidInputError("dataset dimension must be >= 2");
  if (num_domestic_classes < 2) {
    throw InvalidInputError("dataset needs at least 2 domestic classes");
  }
  if (!(separation >= 0.0) || !std::isfinite(separation)) {
    throw InvalidInputError("cluster separation must be finite and >= 0");
  }
  if (samples_per_class == 0) {
    throw InvalidInputError("samples_per_class must be positive");
  }
}

SyntheticDataset GenerateDataset(const SyntheticDatasetSpec& spec) {
  spec.Validate();
  const std::size_t clusters = spec.num_domestic_classes + spec.num_foreign_classes;
  SyntheticDataset data;
  data.centroids.assign(clusters, std::vector<double>(spec.dim, 0.5));

  if (spec.separation > 0.0) {
    Rng rng(DeriveSeed(spec.seed, kCentroidStream));
    std::vector<std::vector<double>> raw(clusters, std::vector<double>(spec.dim));
    double max_abs = 0.0;
    for (auto& z : raw) {
      for (double& v : z) {
        v = rng.Normal();
        max_abs = std::max(max_abs, std::abs(v));
      }
    }
    // Fit the centroid cloud into [0.1, 0.9]^D, then size the clusters so the
    // closest pair of centroids is `separation` standard deviations apart.
    const double scale = 0.4 / max_abs;
    double min_dist = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < clusters; ++a) {
      for (std::size_t i = 0; i < spec.dim; ++i) {
        data.centroids[a][i] = 0.5 + scale * raw[a][i];
      }
      for (std::size_t b = 0; b < a; ++b) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < spec.dim; ++i) {
          const double d = data.centroids[a][i] - data.centroids[b][i];
          d2 += d * d;
        }
        min_dist = std::min(min_dist, std::sqrt(d2));
      }
    }
    data.cluster_std = min_dist / spec.separation;
  } else {
    data.cluster_std = 0.05;
  }

  for (std::size_t c = 0; c < spec.num_domestic_classes; ++c) {
    const int id = static_cast<int>(c) + 1;
    Rng train_rng(DeriveSeed(spec.seed, kTrainStream + c));
    for (std::size_t n = 0; n < spec.samples_per_class; ++n) {
      data.train.push_back({"train" + std::to_string(id) + "-" + std::to_string(n),
                            DrawPoint(data.centroids[c], data.cluster_std, train_rng),
                            GroundTruth::Domestic(id)});
    }
    Rng test_rng(DeriveSeed(spec.seed, kTestStream + c));
    for (std::size_t n = 0; n < spec.test_samples_per_class; ++n) {
      data.test_domestic.push_back(
          {"dom" + std::to_string(id) + "-" + std::to_string(n),
           DrawPoint(data.centroids[c], data.cluster_std, test_rng),
           GroundTruth::Domestic(id)});
    }
  }
  for (std::size_t f = 0; f < spec.num_foreign_classes; ++f) {
    const std::size_t c = spec.num_domestic_classes + f;
    Rng rng(DeriveSeed(spec.seed, kTestStream + c));
    for (std::size_t n = 0; n < spec.test_samples_per_class; ++n) {
      data.test_foreign.push_back(
          {"foreign" + std::to_string(f + 1) + "-" + std::to_string(n),
           DrawPoint(data.centroids[c], data.cluster_std, rng),
           GroundTruth::Foreign()});
    }
  }
  return data;
}

std::string ForeignGroup(const std::string& sample_id) {
  const std::size_t dash = sample_id.rfind('-');
  return dash == std::string::npos ? sample_id : sample_id.substr(0, dash);
}

ToyClassifier::ToyClassifier(std::size_t input_dim, std::size_t hidden,
                             std::size_t num_classes)
    : input_dim_(input_dim),
      hidden_(hidden),
      num_classes_(num_classes),
      params_(Layout{input_dim, hidden, num_classes}.size(), 0.0) {
  if (input_dim == 0 || hidden == 0 || num_classes < 2) {
    throw InvalidInputError("classifier needs D >= 1, H >= 1 and K >= 2");
  }
}

ToyClassifier ToyClassifier::Initialize(std::size_t input_dim,
                                        std::size_t hidden,
                                        std::size_t num_classes,
                                        std::uint64_t seed) {
  ToyClassifier model(input_dim, hidden, num_classes);
  const Layout l{input_dim, hidden, num_classes};
  Rng rng(seed);
  const double sd1 = std::sqrt(2.0 / static_cast<double>(input_dim));
  const double sd2 = std::sqrt(2.0 / static_cast<double>(hidden));
  for (std::size_t i = 0; i < hidden * input_dim; ++i) {
    model.params_[l.w1() + i] = sd1 * rng.Normal();
  }
  for (std::size_t i = 0; i < num_classes * hidden; ++i) {
    model.params_[l.w2() + i] = sd2 * rng.Normal();
  }
  return model;
}

std::vector<double> ToyClassifier::Logits(std::span<const double> x) const {
  CheckInput(*this, x);
  return Forward(params_, {input_dim_, hidden_, num_classes_}, x).logits;
}

std::vector<double> ToyClassifier::Probabilities(std::span<const double> x) const {
  return Softmax(Logits(x));
}

int ToyClassifier::Predict(std::span<const double> x) const {
  return static_cast<int>(ArgMax(Logits(x))) + 1;
}

double ToyClassifier::LossAndGradient(std::span<const InputRecord> batch,
                                      std::vector<double>* gradient) const {
  if (batch.empty()) throw InvalidInputError("empty training batch");
  const Layout l{input_dim_, hidden_, num_classes_};
  if (gradient != nullptr) gradient->assign(l.size(), 0.0);
  double loss = 0.0;
  for (const InputRecord& r : batch) {
    CheckInput(*this, r.features);
    loss += AccumulateGradient(params_, l, r.features,
                               DomesticLabel(r, num_classes_), gradient);
  }
  const double n = static_cast<double>(batch.size());
  if (gradient != nullptr) {
    for (double& g : *gradient) g /= n;
  }
  return loss / n;
}

double ToyClassifier::ProbabilityAndInputGradient(
    std::span<const double> x, int target_class,
    std::vector<double>* gradient) const {
  CheckInput(*this, x);
  if (target_class < 1 || target_class > static_cast<int>(num_classes_)) {
    throw InvalidInputError("target class outside 1..K");
  }
  const Layout l{input_dim_, hidden_, num_classes_};
  const Activations act = Forward(params_, l, x);
  const std::vector<double> p = Softmax(act.logits);
  const std::size_t t = static_cast<std::size_t>(target_class - 1);
  if (gradient == nullptr) return p[t];

  // d p_t / d z_c = p_t (delta_tc - p_c)
  std::vector<double> dpre(l.h, 0.0);
  for (std::size_t c = 0; c < l.k; ++c) {
    const double dz = p[t] * ((c == t ? 1.0 : 0.0) - p[c]);
    const double* row = &params_[l.w2() + c * l.h];
    for (std::size_t j = 0; j < l.h; ++j) dpre[j] += dz * row[j];
  }
  gradient->assign(l.d, 0.0);
  for (std::size_t j = 0; j < l.h; ++j) {
    if (act.pre[j] <= 0.0) continue;
    const double* row = &params_[l.w1() + j * l.d];
    for (std::size_t i = 0; i < l.d; ++i) (*gradient)[i] += dpre[j] * row[i];
  }
  return p[t];
}

std::string ToyClassifier::ToJson() const {
  const Layout l{input_dim_, hidden_, num_classes_};
  auto slice = [&](std::size_t from, std::size_t count) {
    return std::vector<double>(params_.begin() + static_cast<std::ptrdiff_t>(from),
                               params_.begin() + static_cast<std::ptrdiff_t>(from + count));
  };
  nlohmann::ordered_json doc;
  doc["input_dim"] = input_dim_;
  doc["hidden"] = hidden_;
  doc["classes"] = num_classes_;
  nlohmann::ordered_json hidden_layer;
  hidden_layer["name"] = "hidden";
  hidden_layer["activation"] = "relu";
  hidden_layer["shape"] = {hidden_, input_dim_};
  hidden_layer["weights"] = slice(l.w1(), l.h * l.d);
  hidden_layer["bias"] = slice(l.b1(), l.h);
  nlohmann::ordered_json output_layer;
  output_layer["name"] = "output";
  output_layer["activation"] = "identity";
  output_layer["shape"] = {num_classes_, hidden_};
  output_layer["weights"] = slice(l.w2(), l.k * l.h);
  output_layer["bias"] = slice(l.b2(), l.k);
  doc["layers"] = {hidden_layer, output_layer};
  return doc.dump(2) + "\n";
}

ToyClassifier ToyClassifier::FromJson(const std::string& text) {
  try {
    const nlohmann::json doc = nlohmann::json::parse(text);
    ToyClassifier model(doc.at("input_dim").get<std::size_t>(),
                        doc.at("hidden").get<std::size_t>(),
                        doc.at("classes").get<std::size_t>());
    const Layout l{model.input_dim_, model.hidden_, model.num_classes_};
    const auto& layers = doc.at("layers");
    if (layers.size() != 2) throw InvalidInputError("classifier needs 2 layers");
    auto load = [&](const nlohmann::json& v, std::size_t from, std::size_t count) {
      const auto values = v.get<std::vector<double>>();
      if (values.size() != count) {
        throw InvalidInputError("classifier layer has wrong parameter count");
      }
      RequireFinite(values, "classifier weights");
      std::copy(values.begin(), values.end(),
                model.params_.begin() + static_cast<std::ptrdiff_t>(from));
    };
    load(layers[0].at("weights"), l.w1(), l.h * l.d);
    load(layers[0].at("bias"), l.b1(), l.h);
    load(layers[1].at("weights"), l.w2(), l.k * l.h);
    load(layers[1].at("bias"), l.b2(), l.k);
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("malformed classifier: ") + e.what());
  }
}

std::string TrainingOptions::Describe() const {
  std::ostringstream out;
  out << "hidden=" << hidden << " epochs=" << epochs
      << " batch_size=" << batch_size << " learning_rate=" << learning_rate
      << " momentum=" << momentum
      << " validation_fraction=" << validation_fraction << " seed=" << seed;
  return out.str();
}

double Accuracy(const ToyClassifier& model, std::span<const InputRecord> data) {
  std::size_t total = 0, correct = 0;
  for (const InputRecord& r : data) {
    if (!r.truth.is_domestic()) continue;
    ++total;
    if (model.Predict(r.features) == r.truth.class_id()) ++correct;
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

TrainedClassifier TrainClassifier(std::span<const InputRecord> data,
                                  const TrainingOptions& options) {
  if (data.empty()) throw InvalidInputError("no training data");
  if (options.batch_size == 0) throw InvalidInputError("batch size must be positive");
  if (!(options.validation_fraction >= 0.0 && options.validation_fraction < 1.0)) {
    throw InvalidInputError("validation fraction must lie in [0, 1)");
  }
  const std::size_t dim = data.front().features.size();
  int max_class = 0;
  for (const InputRecord& r : data) {
    if (r.features.size() != dim) {
      throw InvalidInputError("sample '" + r.sample_id + "' has wrong dimension");
    }
    if (!r.truth.is_domestic()) {
      throw InvalidInputError("training sample '" + r.sample_id + "' is not domestic");
    }
    RequireFinite(r.features, "training features");
    max_class = std::max(max_class, r.truth.class_id());
  }
  const std::size_t k = static_cast<std::size_t>(max_class);

  Rng split_rng(DeriveSeed(options.seed, 1));
  const std::vector<std::size_t> perm = split_rng.Permutation(data.size());
  const std::size_t n_val = static_cast<std::size_t>(
      options.validation_fraction * static_cast<double>(data.size()));
  std::vector<InputRecord> validation, train;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    (i < n_val ? validation : train).push_back(data[perm[i]]);
  }
  if (train.empty()) throw InvalidInputError("validation split leaves no training data");

  TrainedClassifier out{ToyClassifier::Initialize(dim, options.hidden, k,
                                                  DeriveSeed(options.seed, 0)),
                        {}};
  ToyClassifier& model = out.model;
  const Layout l{dim, options.hidden, k};
  std::vector<double> velocity(l.size(), 0.0);
  std::vector<double> grad(l.size());
  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    Rng rng(DeriveSeed(options.seed, 2 + epoch));
    const std::vector<std::size_t> order = rng.Permutation(train.size());
    for (std::size_t start = 0; start < order.size(); start += options.batch_size) {
      const std::size_t end = std::min(order.size(), start + options.batch_size);
      std::fill(grad.begin(), grad.end(), 0.0);
      double loss = 0.0;
      for (std::size_t b = start; b < end; ++b) {
        const InputRecord& r = train[order[b]];
        loss += AccumulateGradient(model.parameters(), l, r.features,
                                   r.truth.class_id(), &grad);
      }
      const double n = static_cast<double>(end - start);
      if (!std::isfinite(loss)) {
        throw TrainingError("training diverged (non-finite loss) at epoch " +
                            std::to_string(epoch) + "; " + options.Describe());
      }
      std::span<double> params = model.parameters();
      for (std::size_t i = 0; i < params.size(); ++i) {
        velocity[i] = options.momentum * velocity[i] -
                      options.learning_rate * grad[i] / n;
        params[i] += velocity[i];
      }
    }
  }
  out.report.final_loss = model.LossAndGradient(train, nullptr);
  if (!std::isfinite(out.report.final_loss)) {
    throw TrainingError("training diverged (non-finite loss); " + options.Describe());
  }
  out.report.train_accuracy = Accuracy(model, train);
  out.report.validation_accuracy =
      validation.empty() ? out.report.train_accuracy : Accuracy(model, validation);
  return out;
}

std::vector<LogitRecord> ExtractLogits(const ToyClassifier& model,
                                       std::span<const InputRecord> inputs) {
  std::vector<LogitRecord> out;
  out.reserve(inputs.size());
  for (const InputRecord& r : inputs) {
    out.push_back({r.sample_id, model.Logits(r.features), r.truth});
  }
  return out;
}

double CraftResult::PerturbationNorm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < input.size(); ++i) {
    const double d = input[i] - base[i];
    s += d * d;
  }
  return std::sqrt(s);
}

namespace {

void ResolveBounds(const ToyClassifier& model, const CraftSpec& spec,
                   std::vector<double>* lower, std::vector<double>* upper) {
  const std::size_t d = model.input_dim();
  if (spec.lower.empty() && spec.upper.empty()) {
    lower->assign(d, 0.0);
    upper->assign(d, 1.0);
  } else {
    *lower = spec.lower;
    *upper = spec.upper;
  }
  if (lower->size() != d || upper->size() != d) {
    throw InvalidInputError("crafting bounds must have one entry per feature");
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (!std::isfinite((*lower)[i]) || !std::isfinite((*upper)[i]) ||
        (*lower)[i] > (*upper)[i]) {
      throw InvalidInputError("crafting bounds must be finite with lo <= hi");
    }
  }
}

void CheckCraftSpec(const ToyClassifier& model, const CraftSpec& spec) {
  if (spec.target_class < 1 || spec.target_class > static_cast<int>(model.num_classes())) {
    throw InvalidInputError("crafting target outside 1..K");
  }
  if (!(spec.alpha >= 0.0 && spec.alpha < 1.0)) {
    throw InvalidInputError("crafting confidence target must lie in [0, 1)");
  }
  if (!(spec.step_size > 0.0) || !std::isfinite(spec.step_size)) {
    throw InvalidInputError("crafting step size must be positive");
  }
}

}  // namespace

CraftResult CraftFrom(const ToyClassifier& model, std::vector<double> base,
                      int base_class, const CraftSpec& spec) {
  CheckCraftSpec(model, spec);
  CheckInput(model, base);
  std::vector<double> lower, upper;
  ResolveBounds(model, spec, &lower, &upper);
  for (std::size_t i = 0; i < base.size(); ++i) {
    base[i] = std::clamp(base[i], lower[i], upper[i]);
  }

  CraftResult result;
  result.target_class = spec.target_class;
  result.base_class = base_class;
  result.base = base;
  std::vector<double> x = std::move(base);
  std::vector<double> grad, next_grad, candidate(x.size());
  double p = model.ProbabilityAndInputGradient(x, spec.target_class, &grad);
  double step = spec.step_size;
  std::size_t iter = 0;
  while (!(p > spec.alpha) && iter < spec.max_iters) {
    ++iter;
    double norm = 0.0;
    for (double g : grad) norm += g * g;
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm)) break;  // flat region: no ascent direction
    for (std::size_t i = 0; i < x.size(); ++i) {
      candidate[i] = std::clamp(x[i] + step * grad[i] / norm, lower[i], upper[i]);
    }
    const double q =
        model.ProbabilityAndInputGradient(candidate, spec.target_class, &next_grad);
    if (q > p) {
      x.swap(candidate);
      grad.swap(next_grad);
      p = q;
    } else {
      step *= 0.5;
    }
  }
  result.success = p > spec.alpha;
  result.input = std::move(x);
  result.confidence = p;
  result.iterations = iter;
  return result;
}

CraftResult CraftFooling(const ToyClassifier& model, const CraftSpec& spec,
                         std::uint64_t seed) {
  CheckCraftSpec(model, spec);
  std::vector<double> lower, upper;
  ResolveBounds(model, spec, &lower, &upper);
  Rng rng(seed);
  std::vector<double> base(model.input_dim());
  for (std::size_t i = 0; i < base.size(); ++i) base[i] = rng.Uniform(lower[i], upper[i]);
  return CraftFrom(model, std::move(base), 0, spec);
}

CraftResult CraftAdversarial(const ToyClassifier& model, const InputRecord& base,
                             const CraftSpec& spec) {
  const int base_class = DomesticLabel(base, model.num_classes());
  if (base_class == spec.target_class) {
    throw InvalidInputError("adversarial target equals the base sample's class");
  }
  return CraftFrom(model, base.features, base_class, spec);
}

std::vector<CraftResult> CraftFoolingBatch(const ToyClassifier& model,
                                           const CraftSpec& spec,
                                           std::size_t count, std::uint64_t seed) {
  std::vector<CraftResult> results(count);
  const std::size_t k = model.num_classes();
  ParallelFor(count, [&](std::size_t i) {
    CraftSpec s = spec;
    s.target_class = static_cast<int>(i % k) + 1;
    results[i] = CraftFooling(model, s, DeriveSeed(seed, i));
  });
  return results;
}

std::vector<CraftResult> CraftAdversarialBatch(const ToyClassifier& model,
                                               std::span<const InputRecord> pool,
                                               const CraftSpec& spec,
                                               std::size_t count,
                                               std::uint64_t seed) {
  if (pool.empty() && count > 0) throw InvalidInputError("empty adversarial base pool");
  for (const InputRecord& r : pool) DomesticLabel(r, model.num_classes());
  std::vector<CraftResult> results(count);
  const std::size_t k = model.num_classes();
  ParallelFor(count, [&](std::size_t i) {
    Rng rng(DeriveSeed(seed, i));
    const InputRecord& base = pool[rng.Index(pool.size())];
    int target = static_cast<int>(rng.Index(k - 1)) + 1;
    if (target >= base.truth.class_id()) ++target;
    CraftSpec s = spec;
    s.target_class = target;
    results[i] = CraftAdversarial(model, base, s);
  });
  return results;
}

std::vector<InputRecord> CraftedInputs(std::span<const CraftResult> results,
                                       const std::string& prefix) {
  std::vector<InputRecord> out;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const CraftResult& r = results[i];
    if (!r.success) continue;
    std::string id = prefix + "-" + std::to_string(i);
    if (r.base_class != 0) id += "-b" + std::to_string(r.base_class);
    id += "-t" + std::to_string(r.target_class);
    out.push_back({std::move(id), r.input, GroundTruth::Fooling()});
  }
  return out;
}

}  // namespace osl
