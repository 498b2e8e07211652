// SPDX-License-Identifier: Apache-2.0
//
// Confusion-matrix metrics and the multi-dataset, multi-criterion benchmark
// runner with CSV/JSON/markdown report emission.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qfdt/dataset.hpp"
#include "qfdt/tree.hpp"

namespace qfdt {

/// Binary counts against a designated positive class, plus the full m x m
/// grid (row = truth, column = prediction) over the sorted label union.
struct ConfusionMatrix {
  std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
  std::string positive_label;
  std::vector<std::string> labels;
  std::vector<std::int64_t> grid;

  std::int64_t total() const noexcept { return tp + fp + tn + fn; }
  std::int64_t grid_at(std::size_t truth, std::size_t predicted) const {
    return grid[truth * labels.size() + predicted];
  }
};

ConfusionMatrix confusion(std::span<const std::string> truth,
                          std::span<const std::string> predicted,
                          const std::string& positive_label);

/// Metrics with zero denominators are reported as absent, never coerced to 0.
struct BasicMetrics {
  std::optional<double> accuracy;
  // pooled-count precision/recall (for binary problems these equal accuracy
  // by the identity TP_neg = TN, FP_neg = FN) and their harmonic-mean f1
  std::optional<double> precision_paper;
  std::optional<double> recall_paper;
  std::optional<double> f1;
  // conventional per-class macro averages; absent when any class's own term
  // has a zero denominator
  std::optional<double> precision_macro;
  std::optional<double> recall_macro;
};

struct ClinicalMetrics {
  std::optional<double> specificity;  // TN / (TN + FP)
  std::optional<double> ppv;          // TP / (TP + FP)
  std::optional<double> npv;          // TN / (TN + FN)
};

BasicMetrics basic_metrics(const ConfusionMatrix& c);
ClinicalMetrics clinical_metrics(const ConfusionMatrix& c);

/// Unwrap a metric; raises UndefinedMetric naming it when absent.
double require_metric(const std::optional<double>& value, const std::string& name);

struct EvaluationReport {
  std::string dataset;
  CriterionKind criterion = CriterionKind::Fidelity;
  std::uint64_t seed = 0;
  int bins = 2;
  ConfusionMatrix confusion;
  BasicMetrics basic;
  ClinicalMetrics clinical;
  TreeStats tree;
};

bool reports_equal(const EvaluationReport& a, const EvaluationReport& b);

struct RunParams {
  CriterionKind criterion = CriterionKind::Fidelity;
  AmplitudeMode mode = AmplitudeMode::Joint;
  int bins = 2;
  BinStrategy strategy = BinStrategy::EqualFrequency;
  double train_fraction = 0.9;
  std::uint64_t seed = 42;
  std::optional<int> max_depth;
};

struct TrainedRun {
  TreeModel model;
  Discretizer discretizer;
  EvaluationReport report;
};

/// One benchmark cell: seeded split of the raw dataset, bin edges fitted on
/// the train partition only, tree grown on train, report taken on test.
TrainedRun run_single(const Dataset& raw, const std::string& dataset_name,
                      const std::string& positive_label, const RunParams& params);

/// Score an already-trained model on the held-out partition the params
/// define (same split and train-fitted bin edges as run_single, so a model
/// trained on that partition evaluates exactly like its benchmark cell).
EvaluationReport evaluate_holdout(const TreeModel& model, const Dataset& raw,
                                  const std::string& dataset_name,
                                  const std::string& positive_label,
                                  const RunParams& params);

struct BenchmarkConfig {
  std::vector<std::string> datasets = {"haberman", "wisconsin", "seeds"};
  std::vector<CriterionKind> criteria = {CriterionKind::Fidelity, CriterionKind::Qig,
                                         CriterionKind::Cig, CriterionKind::Gini};
  RunParams params;
  std::string data_dir;
};

std::vector<EvaluationReport> run_benchmark(const BenchmarkConfig& config);

enum class ReportFormat { Json, Csv, Markdown };

/// Stable field ordering; CSV/markdown carry percentages with 2 decimals,
/// JSON carries full-precision ratios and round-trips through
/// parse_reports.
std::string emit_report(std::span<const EvaluationReport> reports, ReportFormat format);
std::vector<EvaluationReport> parse_reports(const std::string& json_text);

const char* report_format_name(ReportFormat f) noexcept;
ReportFormat parse_report_format(const std::string& name);

}  // namespace qfdt
