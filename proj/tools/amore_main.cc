/*
 * Copyright 2026 The amore Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// amore: command-line frontend for regional rule extraction.
//
//   amore select-features  importance threshold and frequent feature set
//   amore extract          candidate rule sets and the selected best one
//   amore explain          rule set forced to contain one sample
//   amore evaluate         statistics of rule sets read from JSON
//   amore threshold        ROC threshold from probabilities and labels
//   amore synth            two-mode synthetic dataset
//   amore oracle           exhaustive grid-aligned best rule set
//
// Exit codes: 0 ok, 1 usage, 2 data error, 3 infeasible configuration,
// 4 empty result. Errors are printed to stderr as
// {"error": kind, "message": text}.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "amore/attribution.h"
#include "amore/binning.h"
#include "amore/error.h"
#include "amore/extraction.h"
#include "amore/json_io.h"
#include "amore/metrics.h"
#include "amore/synth.h"
#include "amore/table.h"
#include "amore/target.h"
#include "json.hpp"

namespace amore {
namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitEmpty = 4;

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
    case ErrorKind::kInfeasibleConfig:
    case ErrorKind::kTooLarge:
      return kExitInfeasible;
    case ErrorKind::kEmptyMatrix:
    case ErrorKind::kNoFeature:
    case ErrorKind::kEmptyResult:
      return kExitEmpty;
    default:
      return kExitData;
  }
}

bool Verbose() {
  const char* level = std::getenv("AMORE_LOG_LEVEL");
  return level != nullptr && std::string(level) == "info";
}

void Log(const std::string& message) {
  if (Verbose()) std::cerr << "amore: " << message << "\n";
}

struct DataOptions {
  std::string data;
  std::vector<std::string> categorical;
  std::string missing_token;
  std::string prediction_column;
  std::optional<double> threshold;
  std::string label_column;
  std::string positive_label = "1";
  std::string target_column;
  std::string target_class = "1";
  std::vector<std::string> drop;
  std::vector<std::string> features;
  std::string feature_set;
};

struct SearchOptions {
  int64_t s_min = 1;
  size_t l_max = 2;
  size_t n_grids = 7;
  size_t k = 3;
  std::string strategy = "uniform";
  double iota = 0.8;
  uint64_t seed = 0;
};

struct OutputOptions {
  std::string out;
  std::string text;
  std::string histograms;
};

void AddDataOptions(CLI::App* cmd, DataOptions& o) {
  cmd->add_option("--data", o.data, "Features CSV")->required();
  cmd->add_option("--categorical", o.categorical,
                  "Columns read as categorical")
      ->delimiter(',');
  cmd->add_option("--missing-token", o.missing_token,
                  "Cell text marking a missing value");
  cmd->add_option("--prediction-column", o.prediction_column,
                  "Column of predicted target probabilities");
  cmd->add_option("--threshold", o.threshold,
                  "Prediction threshold (default: ROC with --label-column, "
                  "else 0.5)");
  cmd->add_option("--label-column", o.label_column,
                  "Ground-truth column for the ROC threshold");
  cmd->add_option("--positive-label", o.positive_label,
                  "Positive token in --label-column");
  cmd->add_option("--target-column", o.target_column,
                  "Column holding predicted classes");
  cmd->add_option("--target-class", o.target_class,
                  "Class of interest in --target-column");
  cmd->add_option("--drop", o.drop, "Columns that are not features")
      ->delimiter(',');
  cmd->add_option("--features", o.features, "Feature names to search")
      ->delimiter(',');
  cmd->add_option("--feature-set", o.feature_set,
                  "JSON from select-features giving the features");
}

void AddSearchOptions(CLI::App* cmd, SearchOptions& o) {
  cmd->add_option("--s-min", o.s_min, "Minimum support");
  cmd->add_option("--l-max", o.l_max, "Maximum rules per rule set");
  cmd->add_option("--n-grids", o.n_grids, "Grids per numeric feature");
  cmd->add_option("--k", o.k, "Candidate rules kept per tree node");
  cmd->add_option("--strategy", o.strategy, "uniform, kmeans or quantile");
  cmd->add_option("--iota", o.iota, "Confidence lower bound");
  cmd->add_option("--seed", o.seed, "Seed for k-means binning");
}

void AddOutputOptions(CLI::App* cmd, OutputOptions& o, bool with_extras) {
  cmd->add_option("--out", o.out, "JSON output path (default: stdout)");
  if (!with_extras) return;
  cmd->add_option("--text", o.text, "Aligned-text report path");
  cmd->add_option("--histograms", o.histograms,
                  "Per-feature ratio histogram JSON path");
}

BinningStrategy StrategyFrom(const std::string& name) {
  const auto strategy = ParseStrategy(name);
  if (!strategy) {
    throw Error(ErrorKind::kConfig, "unknown binning strategy '" + name + "'");
  }
  return *strategy;
}

ExtractionConfig ConfigFrom(const SearchOptions& o) {
  ExtractionConfig config;
  config.min_support = o.s_min;
  config.max_rules = o.l_max;
  config.n_grids = o.n_grids;
  config.branching = o.k;
  config.strategy = StrategyFrom(o.strategy);
  config.confidence_floor = o.iota;
  config.seed = o.seed;
  return config;
}

json ConfigJson(const ExtractionConfig& c) {
  return {{"s_min", c.min_support},
          {"l_max", c.max_rules},
          {"n_grids", c.n_grids},
          {"k", c.branching},
          {"strategy", std::string(StrategyName(c.strategy))},
          {"iota", c.confidence_floor},
          {"seed", c.seed}};
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path + "'");
  out << text;
}

void WriteJson(const std::string& path, const json& value) {
  WriteText(path, value.dump(2) + "\n");
}

json ReadJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(0, path, std::string("invalid JSON: ") + e.what());
  }
}

// Table, target and search features resolved from the data options.
struct LoadedData {
  DataTable table;
  TargetIndicator target;
  std::vector<size_t> features;
  std::optional<double> threshold;
};

CsvSchema SchemaFor(const DataOptions& o) {
  CsvSchema schema;
  schema.default_kind = ColumnKind::kNumeric;
  for (const std::string& name : o.categorical) {
    schema.kinds[name] = ColumnKind::kCategorical;
  }
  if (!o.target_column.empty()) {
    schema.kinds[o.target_column] = ColumnKind::kCategorical;
  }
  if (!o.label_column.empty()) {
    schema.kinds[o.label_column] = ColumnKind::kCategorical;
  }
  if (!o.prediction_column.empty()) {
    schema.kinds[o.prediction_column] = ColumnKind::kNumeric;
  }
  return schema;
}

std::vector<double> Probabilities(const FeatureColumn& column) {
  std::vector<double> probs(column.numeric_values().begin(),
                            column.numeric_values().end());
  for (size_t n = 0; n < probs.size(); ++n) {
    if (std::isnan(probs[n])) {
      throw Error(ErrorKind::kDomain, "missing prediction in row " +
                                          std::to_string(n + 1));
    }
  }
  return probs;
}

RowMask LabelFlags(const FeatureColumn& column, const std::string& positive) {
  RowMask labels(column.size(), 0);
  const auto code = column.code_of(positive);
  for (size_t n = 0; n < labels.size(); ++n) {
    labels[n] = code && column.code(n) == *code ? 1 : 0;
  }
  return labels;
}

std::vector<size_t> ResolveFeatures(const DataTable& table,
                                    const DataOptions& o) {
  std::vector<std::string> names = o.features;
  if (names.empty() && !o.feature_set.empty()) {
    const json selection = ReadJson(o.feature_set);
    if (!selection.contains("features") || !selection["features"].is_array()) {
      throw ParseError(0, "features", "feature-set JSON has no features array");
    }
    names = selection["features"].get<std::vector<std::string>>();
  }
  if (names.empty()) names = table.feature_names();
  std::vector<size_t> features;
  for (const std::string& name : names) {
    features.push_back(table.require_index(name));
  }
  return features;
}

LoadedData LoadData(const DataOptions& o, bool need_target) {
  const DataTable raw = LoadCsv(o.data, SchemaFor(o), o.missing_token);
  Log("loaded " + std::to_string(raw.n_rows()) + " rows from " + o.data);
  LoadedData loaded;
  if (!o.target_column.empty()) {
    loaded.target = TargetFromColumn(
        raw.column(raw.require_index(o.target_column)), o.target_class);
  } else if (!o.prediction_column.empty()) {
    const auto probs =
        Probabilities(raw.column(raw.require_index(o.prediction_column)));
    double threshold = 0.5;
    if (o.threshold) {
      threshold = *o.threshold;
    } else if (!o.label_column.empty()) {
      const RowMask labels = LabelFlags(
          raw.column(raw.require_index(o.label_column)), o.positive_label);
      threshold = RocThreshold(probs, labels);
    }
    loaded.threshold = threshold;
    loaded.target = MakeTarget(probs, threshold);
  } else if (need_target) {
    throw Error(ErrorKind::kConfig,
                "give --target-column or --prediction-column");
  }
  std::vector<std::string> drop = o.drop;
  for (const std::string* name :
       {&o.prediction_column, &o.label_column, &o.target_column}) {
    if (!name->empty()) drop.push_back(*name);
  }
  loaded.table = raw.WithoutColumns(drop);
  loaded.features = ResolveFeatures(loaded.table, o);
  return loaded;
}

json TargetJson(const LoadedData& data) {
  json out = {{"label", data.target.label},
              {"count", data.target.count()},
              {"rows", data.table.n_rows()}};
  if (data.threshold) out["threshold"] = *data.threshold;
  return out;
}

json FeatureNames(const DataTable& table, const std::vector<size_t>& features) {
  json names = json::array();
  for (size_t f : features) names.push_back(table.column(f).name());
  return names;
}

// --- select-features -------------------------------------------------------

struct SelectOptions {
  DataOptions data;
  std::string importance;
  std::string scorer = "logistic";
  std::vector<double> weights;
  double bias = 0.0;
  double class_threshold = 0.5;
  size_t tests = 100;
  size_t ig_steps = kDefaultIntegrationSteps;
  double eps = kDefaultShiftEpsilon;
  double gamma = kDefaultGamma;
  std::optional<size_t> c_min;
  std::optional<size_t> k_max;
  uint64_t seed = 0;
  std::string matrix_out;
  OutputOptions output;
};

ImportanceMatrix MatrixFromScorer(const SelectOptions& o) {
  if (o.data.data.empty()) {
    throw Error(ErrorKind::kConfig, "give --importance or --data");
  }
  CsvSchema schema = SchemaFor(o.data);
  const DataTable raw = LoadCsv(o.data.data, schema, o.data.missing_token);
  std::vector<std::string> drop = o.data.drop;
  for (const std::string* name : {&o.data.prediction_column,
                                  &o.data.label_column, &o.data.target_column}) {
    if (!name->empty()) drop.push_back(*name);
  }
  const DataTable table = raw.WithoutColumns(drop);
  std::vector<std::string> names;
  for (const FeatureColumn& column : table.columns()) {
    if (!column.is_numeric()) {
      throw Error(ErrorKind::kSchema, "the built-in scorer needs numeric "
                                      "features; drop '" +
                                          column.name() + "'");
    }
    names.push_back(column.name());
  }
  DifferentiableScorer scorer;
  if (o.scorer == "linear") {
    scorer.kind = ScorerKind::kLinear;
  } else if (o.scorer == "logistic") {
    scorer.kind = ScorerKind::kLogistic;
  } else {
    throw Error(ErrorKind::kConfig, "unknown scorer '" + o.scorer + "'");
  }
  scorer.weights = o.weights;
  scorer.bias = o.bias;
  if (scorer.weights.size() != names.size()) {
    throw Error(ErrorKind::kShape, "--weights has " +
                                       std::to_string(scorer.weights.size()) +
                                       " entries for " +
                                       std::to_string(names.size()) +
                                       " features");
  }

  std::vector<Sample> samples(table.n_rows(), Sample(names.size()));
  std::vector<int> classes(table.n_rows());
  for (size_t n = 0; n < table.n_rows(); ++n) {
    for (size_t f = 0; f < names.size(); ++f) {
      samples[n][f] = table.column(f).numeric(n);
      if (std::isnan(samples[n][f])) {
        throw Error(ErrorKind::kDomain,
                    "missing value in row " + std::to_string(n + 1) +
                        " of feature '" + names[f] + "'");
      }
    }
    classes[n] = scorer.Evaluate(samples[n]) > o.class_threshold ? 1 : 0;
  }
  const std::vector<Sample> baselines = ClassCentroids(samples, classes);
  std::vector<Sample> tests;
  for (size_t n : BalancedSample(classes, o.tests, o.seed)) {
    tests.push_back(samples[n]);
  }
  Log("integrating " + std::to_string(baselines.size() * tests.size()) +
      " baseline/test pairs");
  return BuildImportanceMatrix(scorer, baselines, tests, names, o.ig_steps,
                               o.eps);
}

int RunSelectFeatures(const SelectOptions& o) {
  const ImportanceMatrix matrix = o.importance.empty()
                                      ? MatrixFromScorer(o)
                                      : LoadImportanceMatrix(o.importance);
  if (!o.matrix_out.empty()) {
    std::ostringstream csv;
    WriteImportanceMatrix(csv, matrix);
    WriteText(o.matrix_out, csv.str());
  }
  const size_t c_min = o.c_min.value_or(std::max<size_t>(
      1, static_cast<size_t>(std::ceil(0.1 * static_cast<double>(matrix.rows())))));
  const size_t k_max = o.k_max.value_or(matrix.cols());
  if (c_min < 1 || k_max < 1) {
    throw Error(ErrorKind::kConfig, "--c-min and --k-max must be at least 1");
  }
  const FeatureSelection selection =
      SelectFrequentFeatures(matrix, o.gamma, c_min, k_max);
  json out = FeatureSelectionToJson(matrix, selection);
  out["c_min"] = c_min;
  out["k_max"] = k_max;
  out["gamma"] = o.gamma;
  WriteJson(o.output.out, out);
  return kExitOk;
}

// --- extract / explain / evaluate ------------------------------------------

struct ExtractOptions {
  DataOptions data;
  SearchOptions search;
  OutputOptions output;
};

int RunExtract(const ExtractOptions& o) {
  const LoadedData data = LoadData(o.data, true);
  const ExtractionConfig config = ConfigFrom(o.search);
  const std::vector<RuleSet> sets =
      ExtractRuleSets(data.table, data.target, data.features, config);
  Log("found " + std::to_string(sets.size()) + " candidate rule sets");

  json out = {{"target", TargetJson(data)},
              {"features", FeatureNames(data.table, data.features)},
              {"config", ConfigJson(config)}};
  json rule_sets = json::array();
  for (const RuleSet& set : sets) {
    rule_sets.push_back(RuleSetToJson(data.table, set));
  }
  out["rule_sets"] = rule_sets;
  if (sets.empty()) {
    out["result"] = "none";
    out["reason"] = "no rule with ratio above 1";
    out["best"] = nullptr;
  } else {
    out["result"] = "rules";
    out["best"] = RuleSetToJson(data.table, SelectBest(sets, config.confidence_floor));
  }
  WriteJson(o.output.out, out);

  if (!o.output.text.empty()) {
    EvaluationReport report;
    report.rule_sets = sets;
    report.target_count = static_cast<int64_t>(data.target.count());
    report.table_rows = static_cast<int64_t>(data.table.n_rows());
    WriteText(o.output.text, RenderReportText(data.table, report));
  }
  if (!o.output.histograms.empty()) {
    json histograms = json::array();
    const RowMask all(data.table.n_rows(), 1);
    for (size_t f : data.features) {
      if (!data.table.column(f).is_numeric()) continue;
      try {
        histograms.push_back(HistogramToJson(
            data.table,
            ConditionedHistogram(data.table, data.target, f, all, config)));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kDegenerateFeature) throw;
      }
    }
    WriteJson(o.output.histograms, histograms);
  }
  return kExitOk;
}

struct ExplainOptions {
  DataOptions data;
  SearchOptions search;
  OutputOptions output;
  std::optional<int64_t> row;
  std::string sample;
  size_t sample_row = 0;
};

int RunExplain(const ExplainOptions& o) {
  const LoadedData data = LoadData(o.data, true);
  const ExtractionConfig config = ConfigFrom(o.search);
  SamplePoint sample;
  json where;
  if (o.row.has_value() == !o.sample.empty()) {
    throw Error(ErrorKind::kConfig, "give exactly one of --row and --sample");
  }
  if (o.row) {
    if (*o.row < 0 || static_cast<size_t>(*o.row) >= data.table.n_rows()) {
      throw Error(ErrorKind::kRange,
                  "row " + std::to_string(*o.row) + " is outside [0, " +
                      std::to_string(data.table.n_rows()) + ")");
    }
    sample = SampleFromRow(data.table, static_cast<size_t>(*o.row));
    where = {{"row", *o.row}};
  } else {
    CsvSchema schema = SchemaFor(o.data);
    const DataTable source = LoadCsv(o.sample, schema, o.data.missing_token);
    if (o.sample_row >= source.n_rows()) {
      throw Error(ErrorKind::kRange, "sample row " +
                                         std::to_string(o.sample_row) +
                                         " is outside the sample file");
    }
    sample = SampleFromOtherTable(data.table, source, o.sample_row);
    where = {{"file", o.sample}, {"row", o.sample_row}};
  }
  json values = json::object();
  for (size_t f : data.features) {
    const auto& name = data.table.column(f).name();
    if (const double* v = std::get_if<double>(&sample[f])) {
      values[name] = std::isnan(*v) ? json(nullptr) : json(*v);
    } else {
      const auto& token = std::get<std::optional<std::string>>(sample[f]);
      values[name] = token ? json(*token) : json(nullptr);
    }
  }
  where["values"] = values;

  const auto local =
      ExtractLocal(data.table, data.target, data.features, sample, config);
  json out = {{"target", TargetJson(data)},
              {"sample", where},
              {"config", ConfigJson(config)}};
  if (local) {
    out["result"] = "rules";
    out["rule_set"] = RuleSetToJson(data.table, *local);
  } else {
    out["result"] = "none";
    out["reason"] = "no ratio above 1";
  }
  WriteJson(o.output.out, out);
  return kExitOk;
}

struct EvaluateOptions {
  DataOptions data;
  std::string rules;
  OutputOptions output;
};

int RunEvaluate(const EvaluateOptions& o) {
  const LoadedData data = LoadData(o.data, true);
  const json input = ReadJson(o.rules);
  std::vector<json> entries;
  if (input.is_object() && input.contains("rule_sets")) {
    for (const json& set : input["rule_sets"]) entries.push_back(set);
  } else if (input.is_array()) {
    for (const json& set : input) entries.push_back(set);
  } else {
    entries.push_back(input);
  }
  EvaluationReport report;
  report.target_count = static_cast<int64_t>(data.target.count());
  report.table_rows = static_cast<int64_t>(data.table.n_rows());
  json rule_sets = json::array();
  for (const json& entry : entries) {
    RuleSet set;
    set.rules = RulesFromJson(data.table, entry);
    set.stats = Evaluate(data.table, data.target, set.rules);
    rule_sets.push_back(RuleSetToJson(data.table, set));
    report.rule_sets.push_back(std::move(set));
  }
  WriteJson(o.output.out,
            {{"target", TargetJson(data)}, {"rule_sets", rule_sets}});
  if (!o.output.text.empty()) {
    WriteText(o.output.text, RenderReportText(data.table, report));
  }
  return kExitOk;
}

// --- threshold / synth / oracle --------------------------------------------

struct ThresholdOptions {
  std::string data;
  std::string prediction_column;
  std::string label_column;
  std::string positive_label = "1";
  std::string missing_token;
  OutputOptions output;
};

int RunThreshold(const ThresholdOptions& o) {
  CsvSchema schema;
  schema.kinds[o.prediction_column] = ColumnKind::kNumeric;
  schema.kinds[o.label_column] = ColumnKind::kCategorical;
  schema.default_kind = ColumnKind::kCategorical;
  const DataTable table = LoadCsv(o.data, schema, o.missing_token);
  const auto probs =
      Probabilities(table.column(table.require_index(o.prediction_column)));
  const RowMask labels = LabelFlags(
      table.column(table.require_index(o.label_column)), o.positive_label);
  const double threshold = RocThreshold(probs, labels);
  const TargetIndicator predicted = MakeTarget(probs, threshold);
  int64_t tp = 0, fp = 0, positives = 0;
  for (size_t n = 0; n < labels.size(); ++n) {
    positives += labels[n];
    if (predicted.flags[n]) (labels[n] ? tp : fp) += 1;
  }
  const int64_t negatives = static_cast<int64_t>(labels.size()) - positives;
  const double tpr = static_cast<double>(tp) / static_cast<double>(positives);
  const double fpr = static_cast<double>(fp) / static_cast<double>(negatives);
  WriteJson(o.output.out,
            {{"threshold", threshold}, {"tpr", tpr}, {"fpr", fpr}});
  return kExitOk;
}

struct SynthOptions {
  size_t rows = 2000;
  double background = 0.05;
  double purity = 1.0;
  uint64_t seed = 7;
  std::string out;
  std::string rectangles;
};

int RunSynth(const SynthOptions& o) {
  PlantedSpec spec = TwoModeSpec(o.rows, o.background, o.seed);
  for (PlantedMode& mode : spec.modes) mode.purity = o.purity;
  const SyntheticData data = GenSynthetic(spec);
  std::vector<FeatureColumn> columns(data.table.columns().begin(),
                                     data.table.columns().end());
  std::vector<std::optional<std::string>> target;
  for (uint8_t flag : data.target.flags) {
    target.push_back(flag ? std::string("1") : std::string("0"));
  }
  columns.push_back(FeatureColumn::Categorical("target", target));
  std::ostringstream csv;
  WriteCsv(csv, DataTable(std::move(columns)));
  WriteText(o.out, csv.str());
  if (!o.rectangles.empty()) {
    json rects = json::array();
    for (size_t m = 0; m < spec.modes.size(); ++m) {
      json bounds = json::array();
      for (const auto& [lo, hi] : spec.modes[m].bounds) {
        bounds.push_back({lo, hi});
      }
      rects.push_back({{"bounds", bounds},
                       {"purity", spec.modes[m].purity},
                       {"weight", spec.modes[m].weight},
                       {"rows", std::count(data.mode_of_row.begin(),
                                           data.mode_of_row.end(),
                                           static_cast<int>(m))}});
    }
    WriteJson(o.rectangles, {{"seed", o.seed},
                             {"background_rate", o.background},
                             {"modes", rects}});
  }
  return kExitOk;
}

struct OracleOptions {
  DataOptions data;
  SearchOptions search;
  OutputOptions output;
};

int RunOracle(const OracleOptions& o) {
  const LoadedData data = LoadData(o.data, true);
  std::vector<std::string> keep;
  for (size_t f : data.features) keep.push_back(data.table.column(f).name());
  std::vector<std::string> drop;
  for (const std::string& name : data.table.feature_names()) {
    if (std::find(keep.begin(), keep.end(), name) == keep.end()) {
      drop.push_back(name);
    }
  }
  const DataTable table = data.table.WithoutColumns(drop);
  const RuleSet best = BruteForceBest(
      table, data.target, o.search.n_grids, o.search.l_max, o.search.s_min,
      StrategyFrom(o.search.strategy), o.search.seed);
  WriteJson(o.output.out, {{"target", TargetJson(data)},
                           {"best", RuleSetToJson(table, best)}});
  return kExitOk;
}

// --- config file -----------------------------------------------------------

// Flat "key = value" lines; '#' starts a comment. Keys are long flag names.
std::vector<std::pair<std::string, std::string>> ReadConfigFile(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open config '" + path + "'");
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  size_t number = 0;
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string();
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  };
  while (std::getline(in, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(number, path, "config line " + std::to_string(number) +
                                         " is not key = value");
    }
    entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return entries;
}

// Arguments with config-file entries placed before the user's own flags, so
// that flags given on the command line take precedence.
std::vector<std::string> ExpandConfig(CLI::App& app,
                                      const std::vector<std::string>& args) {
  std::optional<std::string> config;
  std::vector<std::string> rest;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!config) return rest;
  auto sub_pos = std::find_if(rest.begin(), rest.end(), [&](const auto& a) {
    return app.get_subcommand_no_throw(a) != nullptr;
  });
  if (sub_pos == rest.end()) return rest;
  CLI::App* sub = app.get_subcommand(*sub_pos);
  std::vector<std::string> injected;
  for (const auto& [key, value] : ReadConfigFile(*config)) {
    const CLI::Option* option = sub->get_option_no_throw("--" + key);
    if (option == nullptr) {
      throw CLI::ValidationError("config", "unknown key '" + key +
                                               "' for " + sub->get_name());
    }
    if (option->get_expected_min() == 0) {
      if (value == "true" || value == "1") injected.push_back("--" + key);
      continue;
    }
    injected.push_back("--" + key);
    injected.push_back(value);
  }
  rest.insert(sub_pos + 1, injected.begin(), injected.end());
  return rest;
}

void PrintError(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

int Main(int argc, char** argv) {
  CLI::App app{"Regional rule extraction for a target subgroup"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path,
                 "Flat key = value file of long flag names; flags override it");

  SelectOptions select;
  CLI::App* select_cmd = app.add_subcommand(
      "select-features", "Importance threshold and frequent feature set");
  select_cmd->add_option("--importance", select.importance,
                         "Importance-matrix CSV (header = feature names)");
  select_cmd->add_option("--data", select.data.data,
                         "Features CSV for the built-in scorer");
  select_cmd->add_option("--categorical", select.data.categorical)
      ->delimiter(',');
  select_cmd->add_option("--missing-token", select.data.missing_token);
  select_cmd->add_option("--drop", select.data.drop,
                         "Columns that are not features")
      ->delimiter(',');
  select_cmd->add_option("--scorer", select.scorer, "linear or logistic");
  select_cmd->add_option("--weights", select.weights, "Scorer weights")
      ->delimiter(',');
  select_cmd->add_option("--bias", select.bias, "Scorer bias");
  select_cmd->add_option("--class-threshold", select.class_threshold,
                         "Scorer output above this is class 1");
  select_cmd->add_option("--tests", select.tests,
                         "Balanced test samples drawn from the data");
  select_cmd->add_option("--ig-steps", select.ig_steps,
                         "Integration steps for integrated gradients");
  select_cmd->add_option("--eps", select.eps,
                         "Pairs with a smaller output shift are skipped");
  select_cmd->add_option("--gamma", select.gamma, "Row coverage fraction");
  select_cmd->add_option("--c-min", select.c_min,
                         "Minimum itemset count (default: 10% of rows)");
  select_cmd->add_option("--k-max", select.k_max,
                         "Maximum feature-set size (default: all)");
  select_cmd->add_option("--seed", select.seed, "Seed for test sampling");
  select_cmd->add_option("--matrix-out", select.matrix_out,
                         "Write the importance matrix CSV here");
  AddOutputOptions(select_cmd, select.output, false);

  ExtractOptions extract;
  CLI::App* extract_cmd =
      app.add_subcommand("extract", "Candidate rule sets and the best one");
  AddDataOptions(extract_cmd, extract.data);
  AddSearchOptions(extract_cmd, extract.search);
  AddOutputOptions(extract_cmd, extract.output, true);

  ExplainOptions explain;
  CLI::App* explain_cmd =
      app.add_subcommand("explain", "Rule set that contains one sample");
  AddDataOptions(explain_cmd, explain.data);
  AddSearchOptions(explain_cmd, explain.search);
  AddOutputOptions(explain_cmd, explain.output, false);
  explain_cmd->add_option("--row", explain.row, "Row index in --data");
  explain_cmd->add_option("--sample", explain.sample,
                          "CSV holding the sample (same header as --data)");
  explain_cmd->add_option("--sample-row", explain.sample_row,
                          "Row of --sample to explain");

  EvaluateOptions evaluate;
  CLI::App* evaluate_cmd =
      app.add_subcommand("evaluate", "Statistics of rule sets from JSON");
  AddDataOptions(evaluate_cmd, evaluate.data);
  evaluate_cmd->add_option("--rules", evaluate.rules,
                           "Rule-set JSON (extract output, a rule set, or "
                           "an array of rule sets)")
      ->required();
  AddOutputOptions(evaluate_cmd, evaluate.output, true);

  ThresholdOptions threshold;
  CLI::App* threshold_cmd = app.add_subcommand(
      "threshold", "Threshold maximizing TPR - FPR");
  threshold_cmd->add_option("--data", threshold.data, "CSV")->required();
  threshold_cmd
      ->add_option("--prediction-column", threshold.prediction_column,
                   "Probability column")
      ->required();
  threshold_cmd
      ->add_option("--label-column", threshold.label_column,
                   "Ground-truth column")
      ->required();
  threshold_cmd->add_option("--positive-label", threshold.positive_label);
  threshold_cmd->add_option("--missing-token", threshold.missing_token);
  AddOutputOptions(threshold_cmd, threshold.output, false);

  SynthOptions synth;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Two-mode synthetic dataset as CSV");
  synth_cmd->add_option("--rows", synth.rows, "Number of rows");
  synth_cmd->add_option("--background", synth.background,
                        "Target rate outside the rectangles");
  synth_cmd->add_option("--purity", synth.purity,
                        "Target rate inside the rectangles");
  synth_cmd->add_option("--seed", synth.seed, "mt19937_64 seed");
  synth_cmd->add_option("--out", synth.out, "CSV path (default: stdout)");
  synth_cmd->add_option("--rectangles", synth.rectangles,
                        "Planted rectangles JSON path");

  OracleOptions oracle;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "Exhaustive best grid-aligned rule set (small inputs)");
  AddDataOptions(oracle_cmd, oracle.data);
  AddSearchOptions(oracle_cmd, oracle.search);
  AddOutputOptions(oracle_cmd, oracle.output, false);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = ExpandConfig(app, args);
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    PrintError("UsageError", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    PrintError(std::string(ErrorKindName(e.kind())), e.what());
    return ExitCodeFor(e.kind());
  }

  try {
    if (*select_cmd) return RunSelectFeatures(select);
    if (*extract_cmd) return RunExtract(extract);
    if (*explain_cmd) return RunExplain(explain);
    if (*evaluate_cmd) return RunEvaluate(evaluate);
    if (*threshold_cmd) return RunThreshold(threshold);
    if (*synth_cmd) return RunSynth(synth);
    if (*oracle_cmd) return RunOracle(oracle);
  } catch (const Error& e) {
    PrintError(std::string(ErrorKindName(e.kind())), e.what());
    return ExitCodeFor(e.kind());
  } catch (const json::exception& e) {
    PrintError("ParseError", e.what());
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace amore

int main(int argc, char** argv) { return amore::Main(argc, argv); }
