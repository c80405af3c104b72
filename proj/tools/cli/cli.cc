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

#include "cli.h"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "osl/core.h"
#include "osl/errors.h"
#include "osl/lc.h"
#include "osl/logging.h"
#include "osl/logit_io.h"
#include "osl/metrics.h"
#include "osl/openmax.h"
#include "osl/pipeline.h"
#include "osl/synth.h"
#include "plot.h"

namespace osl::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct GlobalOptions {
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string out_dir = ".";
  std::string format = "json";
};

struct GenDataOptions {
  std::size_t dim = 8;
  std::size_t classes = 5;
  std::size_t foreign_classes = 0;
  std::size_t samples_per_class = 100;
  std::size_t test_samples_per_class = 100;
  double separation = 6.0;
};

struct TrainOptions {
  std::string data;
  TrainingOptions training;
};

struct ExtractOptions {
  std::string model;
  std::string input;
  std::string output;
};

struct CraftOptions {
  std::string kind = "fooling";
  std::string model;
  std::string base;
  std::size_t count = 1000;
  CraftSpec spec;
};

struct CalibrateOptions {
  std::string logits;
  std::size_t eta = 20;
  std::string distance = "eucos";
  double eucos_scale = 200.0;
  std::string alpha_rule = "paper";
};

struct EvaluateOptions {
  std::string method = "lc-exp";
  std::string domestic;
  std::string foreign;
  std::string fooling;
  std::string model;
  std::size_t top_m = 10;
  double epsilon_pred = 0.0;
  double theta = 0.0;
  bool sweep = false;
  double epsilon_stab = kDefaultEpsilonStab;
  bool drop_misclassified = false;
  bool timing = false;
  double learning_seconds = 0.0;
  ScenarioSpec scenario;
};

struct PlotOptions {
  std::string scores;
  std::string adversarial;
  std::string title;
};

fs::path OutPath(const GlobalOptions& global, const std::string& name) {
  return fs::path(global.out_dir) / name;
}

void EnsureOutDir(const GlobalOptions& global) {
  std::error_code ec;
  fs::create_directories(global.out_dir, ec);
  if (ec) {
    throw InvalidInputError("cannot create output directory '" + global.out_dir +
                            "': " + ec.message());
  }
}

void RequireSeed(const GlobalOptions& global, const std::string& what) {
  if (!global.has_seed) throw InvalidInputError(what + " requires --seed");
}

Json OptionalNumber(const std::optional<double>& value) {
  if (!value || !std::isfinite(*value)) return nullptr;
  return *value;
}

Json Number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

std::string Short(double value) {
  std::ostringstream out;
  out.precision(6);
  out << value;
  return out.str();
}

std::string JsonText(const Json& j) { return j.dump(2) + "\n"; }

// Flattens nested objects into key,value rows joined by '.'.
void FlattenJson(const Json& j, const std::string& prefix, std::ostringstream& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      FlattenJson(*it, key, out);
    } else if (it->is_number_float()) {
      out << key << ',' << FormatDouble(it->get<double>()) << '\n';
    } else if (it->is_string()) {
      out << key << ',' << it->get<std::string>() << '\n';
    } else if (it->is_null()) {
      out << key << ",\n";
    } else {
      out << key << ',' << it->dump() << '\n';
    }
  }
}

// Writes `<stem>.json` or `<stem>.csv` depending on --format.
fs::path WriteReport(const GlobalOptions& global, const std::string& stem,
                     const Json& report) {
  if (global.format == "csv") {
    std::ostringstream out;
    out << "key,value\n";
    FlattenJson(report, "", out);
    const fs::path path = OutPath(global, stem + ".csv");
    WriteTextFile(path.string(), out.str());
    return path;
  }
  const fs::path path = OutPath(global, stem + ".json");
  WriteTextFile(path.string(), JsonText(report));
  return path;
}

ToyClassifier LoadClassifier(const std::string& path) {
  try {
    return ToyClassifier::FromJson(ReadTextFile(path));
  } catch (const std::exception& e) {
    throw InvalidInputError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------- gen-data

int RunGenData(const GlobalOptions& global, const GenDataOptions& opts,
               std::ostream& out) {
  RequireSeed(global, "gen-data");
  SyntheticDatasetSpec spec;
  spec.dim = opts.dim;
  spec.num_domestic_classes = opts.classes;
  spec.num_foreign_classes = opts.foreign_classes;
  spec.samples_per_class = opts.samples_per_class;
  spec.test_samples_per_class = opts.test_samples_per_class;
  spec.separation = opts.separation;
  spec.seed = global.seed;
  const SyntheticDataset data = GenerateDataset(spec);
  EnsureOutDir(global);
  WriteFeatureCsvFile(OutPath(global, "train.csv").string(), data.train);
  WriteFeatureCsvFile(OutPath(global, "test_domestic.csv").string(),
                      data.test_domestic);
  WriteFeatureCsvFile(OutPath(global, "test_foreign.csv").string(),
                      data.test_foreign);
  out << "train: " << data.train.size() << " samples\n"
      << "test_domestic: " << data.test_domestic.size() << " samples\n"
      << "test_foreign: " << data.test_foreign.size() << " samples\n"
      << "cluster_std: " << Short(data.cluster_std) << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------- train

int RunTrain(const GlobalOptions& global, TrainOptions opts, std::ostream& out) {
  RequireSeed(global, "train");
  opts.training.seed = global.seed;
  const std::vector<InputRecord> data = ReadFeatureCsvFile(opts.data);
  const TrainedClassifier trained = TrainClassifier(data, opts.training);
  EnsureOutDir(global);
  WriteTextFile(OutPath(global, "classifier.json").string(), trained.model.ToJson());
  Json report;
  report["samples"] = data.size();
  report["input_dim"] = trained.model.input_dim();
  report["hidden"] = trained.model.hidden();
  report["classes"] = trained.model.num_classes();
  report["final_loss"] = Number(trained.report.final_loss);
  report["train_accuracy"] = trained.report.train_accuracy;
  report["validation_accuracy"] = trained.report.validation_accuracy;
  WriteReport(global, "train_report", report);
  out << "final_loss: " << Short(trained.report.final_loss) << '\n'
      << "train_accuracy: " << Short(trained.report.train_accuracy) << '\n'
      << "validation_accuracy: " << Short(trained.report.validation_accuracy)
      << '\n';
  return kExitOk;
}

// ---------------------------------------------------------- extract-logits

int RunExtract(const GlobalOptions& global, const ExtractOptions& opts,
               std::ostream& out) {
  const ToyClassifier model = LoadClassifier(opts.model);
  const std::vector<InputRecord> inputs = ReadFeatureCsvFile(opts.input);
  if (!inputs.empty() && inputs.front().features.size() != model.input_dim()) {
    throw InvalidInputError(opts.input + ": feature dimension " +
                            std::to_string(inputs.front().features.size()) +
                            " does not match the model input " +
                            std::to_string(model.input_dim()));
  }
  const std::vector<LogitRecord> logits = ExtractLogits(model, inputs);
  std::string name = opts.output;
  if (name.empty()) name = fs::path(opts.input).stem().string() + "_logits.csv";
  EnsureOutDir(global);
  const fs::path path = OutPath(global, name);
  WriteLogitCsvFile(path.string(), logits);
  out << "wrote " << logits.size() << " logit vectors to " << path.string() << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------- craft

int RunCraft(const GlobalOptions& global, CraftOptions opts, std::ostream& out) {
  RequireSeed(global, "craft");
  if (opts.kind != "fooling" && opts.kind != "adversarial") {
    throw InvalidInputError("--kind must be fooling or adversarial");
  }
  const ToyClassifier model = LoadClassifier(opts.model);
  std::vector<CraftResult> results;
  if (opts.kind == "fooling") {
    results = CraftFoolingBatch(model, opts.spec, opts.count, global.seed);
  } else {
    if (opts.base.empty()) throw InvalidInputError("adversarial crafting requires --base");
    const std::vector<InputRecord> pool = ReadFeatureCsvFile(opts.base);
    results = CraftAdversarialBatch(model, pool, opts.spec, opts.count, global.seed);
  }
  const std::vector<InputRecord> crafted = CraftedInputs(results, opts.kind);
  double iterations = 0.0;
  double norm = 0.0;
  for (const CraftResult& r : results) {
    if (!r.success) continue;
    iterations += static_cast<double>(r.iterations);
    norm += r.PerturbationNorm();
  }
  const double successes = static_cast<double>(crafted.size());
  EnsureOutDir(global);
  WriteFeatureCsvFile(OutPath(global, opts.kind + ".csv").string(), crafted);
  Json report;
  report["kind"] = opts.kind;
  report["attempts"] = results.size();
  report["successes"] = crafted.size();
  report["success_rate"] =
      results.empty() ? 0.0 : successes / static_cast<double>(results.size());
  report["alpha"] = opts.spec.alpha;
  report["max_iters"] = opts.spec.max_iters;
  report["step_size"] = opts.spec.step_size;
  report["mean_iterations"] = crafted.empty() ? Json(nullptr) : Json(iterations / successes);
  report["mean_perturbation_norm"] =
      crafted.empty() ? Json(nullptr) : Json(norm / successes);
  WriteReport(global, opts.kind + "_report", report);
  out << opts.kind << ": " << crafted.size() << " of " << results.size()
      << " attempts reached confidence > " << Short(opts.spec.alpha) << '\n';
  return kExitOk;
}

// ------------------------------------------------------- calibrate-openmax

int RunCalibrate(const GlobalOptions& global, const CalibrateOptions& opts,
                 std::ostream& out) {
  CalibrationOptions options;
  options.eta = opts.eta;
  options.distance.kind = ParseDistanceKind(opts.distance);
  options.distance.eucos_scale = opts.eucos_scale;
  options.alpha_rule = ParseAlphaRule(opts.alpha_rule);
  const std::vector<LogitRecord> training = ReadLogitCsvFile(opts.logits);
  const OpenMaxModel model = Calibrate(training, options);
  EnsureOutDir(global);
  const fs::path path = OutPath(global, "openmax.json");
  WriteTextFile(path.string(), model.ToJson());
  out << "calibrated " << model.num_classes << " classes (eta " << model.eta
      << ", " << ToString(model.distance.kind) << ") to " << path.string() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- evaluate

std::vector<LogitRecord> ReadTagged(const std::string& path,
                                    GroundTruth::Kind expected,
                                    const std::string& group) {
  std::vector<LogitRecord> records = ReadLogitCsvFile(path);
  for (const LogitRecord& r : records) {
    if (r.truth.kind() != expected) {
      throw InvalidInputError(path + ": sample '" + r.sample_id +
                              "' is not tagged " + group);
    }
  }
  return records;
}

bool ScenarioRequested(const ScenarioSpec& s) {
  return s.n_domestic + s.n_fooling + s.images_per_foreign_class +
             s.n_foreign_classes > 0;
}

std::vector<LogitRecord> AssembleRecords(const GlobalOptions& global,
                                         const EvaluateOptions& opts) {
  if (opts.domestic.empty() && opts.foreign.empty() && opts.fooling.empty()) {
    throw InvalidInputError(
        "evaluate needs at least one of --domestic, --foreign, --fooling");
  }
  ScenarioPools pools;
  std::vector<LogitRecord> foreign;
  if (!opts.domestic.empty()) {
    pools.domestic = ReadTagged(opts.domestic, GroundTruth::Kind::kDomestic, "domestic");
  }
  if (!opts.fooling.empty()) {
    pools.fooling = ReadTagged(opts.fooling, GroundTruth::Kind::kFooling, "fooling");
  }
  if (!opts.foreign.empty()) {
    foreign = ReadTagged(opts.foreign, GroundTruth::Kind::kForeign, "foreign");
  }

  if (!ScenarioRequested(opts.scenario)) {
    std::vector<LogitRecord> records = std::move(pools.domestic);
    records.insert(records.end(), pools.fooling.begin(), pools.fooling.end());
    records.insert(records.end(), foreign.begin(), foreign.end());
    return records;
  }
  RequireSeed(global, "scenario sampling");
  std::map<std::string, std::vector<LogitRecord>> groups;
  for (LogitRecord& r : foreign) groups[ForeignGroup(r.sample_id)].push_back(std::move(r));
  for (auto& [name, group] : groups) pools.foreign_by_class.push_back(std::move(group));
  return BuildScenario(opts.scenario, pools, global.seed).records;
}

std::string ScoresCsv(std::span<const LogitRecord> records, const Evaluation& eval,
                      Method method) {
  const bool lc = method == Method::kLcExponential || method == Method::kLcCubic;
  std::ostringstream out;
  out << "sample_id,truth," << (lc ? "cognizance" : "score")
      << ",predicted_label,argmax_label\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    out << records[i].sample_id << ',' << records[i].truth.code() << ','
        << FormatDouble(eval.scores[i]) << ',' << eval.predictions[i] << ','
        << ArgMax(records[i].logits) + 1 << '\n';
  }
  return out.str();
}

std::string ConfusionCsv(const Confusion& c) {
  std::ostringstream out;
  out << "group,predicted_domestic,predicted_foreign,correct,incorrect\n"
      << "domestic," << c.correct + c.incorrect << ',' << c.domestic_rejected << ','
      << c.correct << ',' << c.incorrect << '\n'
      << "fooling," << c.fooling_as_domestic << ',' << c.fooling_as_foreign << ",,\n"
      << "foreign," << c.foreign_as_domestic << ',' << c.foreign_as_foreign << ",,\n";
  return out.str();
}

std::string SweepCsv(const SweepResult& sweep) {
  std::ostringstream out;
  out << "theta,q1\n";
  for (const ThresholdPoint& p : sweep.curve) {
    out << FormatDouble(p.theta) << ',' << FormatDouble(p.q1) << '\n';
  }
  return out.str();
}

int RunEvaluate(const GlobalOptions& global, const EvaluateOptions& opts,
                std::ostream& out) {
  const Method method = ParseMethod(opts.method);
  std::optional<OpenMaxModel> model;
  if (method == Method::kOpenMax) {
    if (opts.model.empty()) throw InvalidInputError("--method openmax requires --model");
    try {
      model = OpenMaxModel::FromJson(ReadTextFile(opts.model));
    } catch (const std::exception& e) {
      throw InvalidInputError(opts.model + ": " + e.what());
    }
  }
  std::vector<LogitRecord> records = AssembleRecords(global, opts);
  if (opts.drop_misclassified) records = DropMisclassified(records);

  EvaluationOptions options;
  options.method = method;
  options.top_m = opts.top_m;
  options.threshold = method == Method::kOpenMax ? opts.epsilon_pred : opts.theta;
  options.sweep = opts.sweep && method != Method::kArgmaxBaseline;
  options.epsilon_stab = opts.epsilon_stab;
  const Evaluation eval = Evaluate(records, options, model ? &*model : nullptr);

  const MetricCounts& counts = eval.counts;
  Json report;
  report["method"] = ToString(method);
  report["num_samples"] = records.size();
  report["num_domestic"] = counts.NumDomestic();
  report["num_foreign"] = counts.NumForeign();
  report["num_fooling"] = counts.NumFooling();
  report["threshold"] = eval.threshold ? Number(*eval.threshold) : Json(nullptr);
  report["swept"] = options.sweep;
  report["q1"] = eval.q1.q1;
  report["f_d"] = eval.q1.f_d;
  report["f_o"] = eval.q1.f_o;
  report["p_o"] = eval.q1.p_o;
  report["r_o"] = eval.q1.r_o;
  report["f_acc"] = eval.accuracies.f_acc;
  report["c_acc"] = OptionalNumber(eval.accuracies.c_acc);
  report["cr"] = eval.confusion.correct;
  report["ic"] = eval.confusion.incorrect;
  report["domestic_rejected"] = eval.confusion.domestic_rejected;
  report["comfort_ratio"] =
      static_cast<double>(counts.NumDomestic()) / static_cast<double>(counts.Total());
  Json per_class = Json::object();
  for (std::size_t k = 0; k < eval.q1.per_class_f.size(); ++k) {
    per_class[std::to_string(k + 1)] = OptionalNumber(eval.q1.per_class_f[k]);
  }
  report["per_class_f"] = per_class;
  if (opts.timing) {
    TimingInput input;
    input.requires_domestic_learning = method == Method::kOpenMax;
    input.domestic_learning_s = opts.learning_seconds;
    input.identification_total_s = eval.identification_seconds;
    input.num_images = records.size();
    const TimingReport timing = MakeTimingReport(input);
    Json t;
    t["domestic_learning_total_s"] = timing.domestic_learning_total_s;
    t["per_image_identification_avg_s"] = timing.per_image_identification_avg_s;
    report["timing"] = t;
  }

  EnsureOutDir(global);
  WriteReport(global, "report", report);
  WriteTextFile(OutPath(global, "confusion.csv").string(), ConfusionCsv(eval.confusion));
  WriteTextFile(OutPath(global, "scores.csv").string(),
                ScoresCsv(records, eval, method));
  if (eval.sweep) {
    WriteTextFile(OutPath(global, "sweep.csv").string(), SweepCsv(*eval.sweep));
  }
  out << ToString(method) << ": q1 " << Short(eval.q1.q1) << ", f_acc "
      << Short(eval.accuracies.f_acc);
  if (eval.threshold) out << ", threshold " << Short(*eval.threshold);
  out << '\n';
  return kExitOk;
}

// -------------------------------------------------------------------- plot

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

void AddGroup(std::vector<BoxGroup>& groups, const std::string& name,
              std::vector<double> values) {
  std::erase_if(values, [](double v) { return !std::isfinite(v); });
  if (values.empty()) {
    LogWarning("group " + name + " is empty; omitted from the boxplot");
    return;
  }
  groups.push_back({name, ComputeBoxStats(std::move(values))});
}

int RunPlot(const GlobalOptions& global, const PlotOptions& opts, std::ostream& out) {
  const std::vector<ScoreRow> rows = ReadScoreCsvFile(opts.scores);
  std::vector<ScoreRow> adversarial;
  if (!opts.adversarial.empty()) adversarial = ReadScoreCsvFile(opts.adversarial);

  std::vector<double> domestic, foreign, fooling, correct, incorrect, adv;
  for (const ScoreRow& r : rows) {
    if (r.truth >= 1) {
      domestic.push_back(r.score);
      (r.argmax_label == r.truth ? correct : incorrect).push_back(r.score);
    } else if (r.truth == 0) {
      foreign.push_back(r.score);
    } else {
      fooling.push_back(r.score);
    }
  }
  for (const ScoreRow& r : adversarial) adv.push_back(r.score);

  std::vector<BoxGroup> groups;
  AddGroup(groups, "Domestic", domestic);
  AddGroup(groups, "Foreign", foreign);
  AddGroup(groups, "Fooling", fooling);
  AddGroup(groups, "Correct", correct);
  AddGroup(groups, "Incorrect", incorrect);
  AddGroup(groups, "Adversarial", adv);

  const std::string title = opts.title.empty() ? "Score distribution" : opts.title;
  EnsureOutDir(global);
  WriteTextFile(OutPath(global, "boxplot.csv").string(), BoxplotCsv(groups));
  WriteTextFile(OutPath(global, "boxplot.svg").string(), BoxplotSvg(groups, title));
  out << "boxplot: " << groups.size() << " groups\n";
  if (adv.empty()) return kExitOk;

  // Adversarial inputs are the positives; low scores flag them.
  std::vector<PrSeries> series;
  Json auc;
  auto add_series = [&](const std::string& name, const std::vector<double>& negatives) {
    if (negatives.empty()) {
      LogWarning("no " + name + " samples; PR curve omitted");
      return;
    }
    const std::size_t n = adv.size() + negatives.size();
    std::vector<double> scores;
    scores.reserve(n);
    std::unique_ptr<bool[]> positive(new bool[n]);
    for (double s : adv) {
      positive[scores.size()] = true;
      scores.push_back(-s);
    }
    for (double s : negatives) {
      positive[scores.size()] = false;
      scores.push_back(-s);
    }
    const std::vector<PrPoint> points =
        PrCurve(scores, std::span<const bool>(positive.get(), n));
    WriteTextFile(OutPath(global, "pr_" + name + ".csv").string(), PrCurveCsv(points));
    auc[name] = AucPr(points);
    out << "pr_" << name << ": auc " << Short(AucPr(points)) << '\n';
    series.push_back({name, points});
  };
  add_series("domestic", domestic);
  add_series("correct", correct);
  if (series.empty()) return kExitOk;
  WriteTextFile(OutPath(global, "pr.svg").string(),
                PrCurveSvg(series, "Adversarial detection"));
  WriteTextFile(OutPath(global, "auc.json").string(), JsonText(auc));
  return kExitOk;
}

int ExitCodeFor(const std::exception& e) {
  if (dynamic_cast<const CalibrationError*>(&e) ||
      dynamic_cast<const ConvergenceError*>(&e) ||
      dynamic_cast<const TrainingError*>(&e)) {
    return kExitFit;
  }
  if (dynamic_cast<const Error*>(&e)) return kExitValidation;
  return kExitFailure;
}

}  // namespace

std::vector<ScoreRow> ReadScoreCsvFile(const std::string& path) {
  std::istringstream in(ReadTextFile(path));
  std::string line;
  if (!std::getline(in, line)) throw InvalidInputError(path + ": missing CSV header");
  const std::vector<std::string> header = SplitCsvLine(line);
  if (header.size() != 5 || header[0] != "sample_id" || header[1] != "truth" ||
      header[3] != "predicted_label" || header[4] != "argmax_label") {
    throw InvalidInputError(path + ": not a score dump");
  }
  std::vector<ScoreRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> cells = SplitCsvLine(line);
    if (cells.size() != 5) {
      throw InvalidInputError(path + ":" + std::to_string(line_no) +
                              ": expected 5 columns");
    }
    try {
      ScoreRow row;
      row.sample_id = cells[0];
      row.truth = std::stoi(cells[1]);
      row.score = std::stod(cells[2]);
      row.predicted_label = std::stoi(cells[3]);
      row.argmax_label = std::stoi(cells[4]);
      rows.push_back(std::move(row));
    } catch (const std::logic_error&) {
      throw InvalidInputError(path + ":" + std::to_string(line_no) +
                              ": malformed number");
    }
  }
  return rows;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Open-set recognition toolkit", "osl"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  CLI::Option* seed_opt = app.add_option("--seed", global.seed, "Random seed");
  app.add_option("--out-dir", global.out_dir, "Output directory")
      ->capture_default_str();
  app.add_option("--format", global.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  GenDataOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen-data", "Generate a synthetic dataset");
  gen_cmd->add_option("--dim", gen.dim)->capture_default_str();
  gen_cmd->add_option("--classes", gen.classes)->capture_default_str();
  gen_cmd->add_option("--foreign-classes", gen.foreign_classes)->capture_default_str();
  gen_cmd->add_option("--samples-per-class", gen.samples_per_class)
      ->capture_default_str();
  gen_cmd->add_option("--test-samples-per-class", gen.test_samples_per_class)
      ->capture_default_str();
  gen_cmd->add_option("--separation", gen.separation)->capture_default_str();

  TrainOptions train;
  CLI::App* train_cmd = app.add_subcommand("train", "Train the toy classifier");
  train_cmd->add_option("--data", train.data, "Training feature CSV")->required();
  train_cmd->add_option("--hidden", train.training.hidden)->capture_default_str();
  train_cmd->add_option("--epochs", train.training.epochs)->capture_default_str();
  train_cmd->add_option("--batch-size", train.training.batch_size)
      ->capture_default_str();
  train_cmd->add_option("--lr", train.training.learning_rate)->capture_default_str();
  train_cmd->add_option("--momentum", train.training.momentum)->capture_default_str();
  train_cmd->add_option("--validation-fraction", train.training.validation_fraction)
      ->capture_default_str();

  ExtractOptions extract;
  CLI::App* extract_cmd =
      app.add_subcommand("extract-logits", "Write penultimate vectors of inputs");
  extract_cmd->add_option("--model", extract.model, "Classifier JSON")->required();
  extract_cmd->add_option("--input", extract.input, "Feature CSV")->required();
  extract_cmd->add_option("--output", extract.output,
                          "Output file name inside --out-dir");

  CraftOptions craft;
  CLI::App* craft_cmd = app.add_subcommand("craft", "Craft fooling or adversarial inputs");
  craft_cmd->add_option("--kind", craft.kind)
      ->check(CLI::IsMember({"fooling", "adversarial"}))
      ->capture_default_str();
  craft_cmd->add_option("--model", craft.model, "Classifier JSON")->required();
  craft_cmd->add_option("--base", craft.base, "Domestic feature CSV for adversarial bases");
  craft_cmd->add_option("--count", craft.count)->capture_default_str();
  craft_cmd->add_option("--alpha", craft.spec.alpha)->capture_default_str();
  craft_cmd->add_option("--max-iters", craft.spec.max_iters)->capture_default_str();
  craft_cmd->add_option("--step-size", craft.spec.step_size)->capture_default_str();

  CalibrateOptions calibrate;
  CLI::App* calibrate_cmd =
      app.add_subcommand("calibrate-openmax", "Fit per-class Weibull models");
  calibrate_cmd->add_option("--logits", calibrate.logits, "Training logit CSV")
      ->required();
  calibrate_cmd->add_option("--eta", calibrate.eta)->capture_default_str();
  calibrate_cmd->add_option("--distance", calibrate.distance)
      ->check(CLI::IsMember({"euclidean", "cosine", "eucos"}))
      ->capture_default_str();
  calibrate_cmd->add_option("--eucos-scale", calibrate.eucos_scale)
      ->capture_default_str();
  calibrate_cmd->add_option("--alpha-rule", calibrate.alpha_rule)
      ->check(CLI::IsMember({"paper", "reference"}))
      ->capture_default_str();

  EvaluateOptions evaluate;
  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "Score and evaluate logits");
  evaluate_cmd->add_option("--method", evaluate.method)
      ->check(CLI::IsMember({"lc-exp", "lc-cubic", "openmax", "argmax-baseline"}))
      ->capture_default_str();
  evaluate_cmd->add_option("--domestic", evaluate.domestic, "Domestic logit CSV");
  evaluate_cmd->add_option("--foreign", evaluate.foreign, "Foreign logit CSV");
  evaluate_cmd->add_option("--fooling", evaluate.fooling, "Fooling logit CSV");
  evaluate_cmd->add_option("--model", evaluate.model, "OpenMax model JSON");
  evaluate_cmd->add_option("--m-top", evaluate.top_m)->capture_default_str();
  evaluate_cmd->add_option("--epsilon-pred", evaluate.epsilon_pred)
      ->capture_default_str();
  CLI::Option* theta_opt =
      evaluate_cmd->add_option("--theta", evaluate.theta)->capture_default_str();
  CLI::Option* sweep_opt =
      evaluate_cmd->add_flag("--sweep", evaluate.sweep, "Pick the Q1-optimal threshold");
  theta_opt->excludes(sweep_opt);
  evaluate_cmd->add_option("--epsilon-stab", evaluate.epsilon_stab)
      ->capture_default_str();
  evaluate_cmd->add_flag("--drop-misclassified", evaluate.drop_misclassified);
  evaluate_cmd->add_flag("--timing", evaluate.timing, "Include timing in the report");
  evaluate_cmd->add_option("--learning-seconds", evaluate.learning_seconds,
                           "Measured domestic-learning time for the timing report");
  evaluate_cmd->add_option("--n-domestic", evaluate.scenario.n_domestic);
  evaluate_cmd->add_option("--n-fooling", evaluate.scenario.n_fooling);
  evaluate_cmd->add_option("--images-per-foreign-class",
                           evaluate.scenario.images_per_foreign_class);
  evaluate_cmd->add_option("--n-foreign-classes", evaluate.scenario.n_foreign_classes);

  PlotOptions plot;
  CLI::App* plot_cmd = app.add_subcommand("plot", "Boxplots and PR curves from scores");
  plot_cmd->add_option("--scores", plot.scores, "Score dump CSV")->required();
  plot_cmd->add_option("--adversarial", plot.adversarial,
                       "Score dump CSV of adversarial inputs");
  plot_cmd->add_option("--title", plot.title);

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("osl");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }
  global.has_seed = seed_opt->count() > 0;

  LogSink previous = SetLogSink([&err](LogLevel level, std::string_view message) {
    if (level == LogLevel::kWarning) err << "warning: " << message << '\n';
  });
  int code = kExitOk;
  try {
    if (gen_cmd->parsed()) {
      code = RunGenData(global, gen, out);
    } else if (train_cmd->parsed()) {
      code = RunTrain(global, train, out);
    } else if (extract_cmd->parsed()) {
      code = RunExtract(global, extract, out);
    } else if (craft_cmd->parsed()) {
      code = RunCraft(global, craft, out);
    } else if (calibrate_cmd->parsed()) {
      code = RunCalibrate(global, calibrate, out);
    } else if (evaluate_cmd->parsed()) {
      code = RunEvaluate(global, evaluate, out);
    } else if (plot_cmd->parsed()) {
      code = RunPlot(global, plot, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    code = ExitCodeFor(e);
  }
  SetLogSink(std::move(previous));
  return code;
}

}  // namespace osl::cli
