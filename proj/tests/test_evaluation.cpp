// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "common.hpp"
#include "oracles.hpp"
#include "qfdt/evaluation.hpp"

using namespace qfdt;

namespace {

// The reconstructed 31-row screening outcome: tp=1, fp=2, tn=20, fn=8.
ConfusionMatrix screening_counts() {
  std::vector<std::string> truth, predicted;
  auto add = [&](int n, const char* t, const char* p) {
    for (int i = 0; i < n; ++i) {
      truth.push_back(t);
      predicted.push_back(p);
    }
  };
  add(1, "pos", "pos");   // tp
  add(2, "neg", "pos");   // fp
  add(20, "neg", "neg");  // tn
  add(8, "pos", "neg");   // fn
  return confusion(truth, predicted, "pos");
}

}  // namespace

TEST_CASE("confusion counts the four cells") {
  std::vector<std::string> truth = {"1", "0"};
  std::vector<std::string> pred = {"1", "0"};
  ConfusionMatrix c = confusion(truth, pred, "1");
  CHECK(c.tp == 1);
  CHECK(c.tn == 1);
  CHECK(c.fp == 0);
  CHECK(c.fn == 0);
  CHECK(c.grid_at(1, 1) == 1);

  std::vector<std::string> all_pos = {"1", "1"};
  std::vector<std::string> all_neg = {"0", "0"};
  ConfusionMatrix miss = confusion(all_pos, all_neg, "1");
  CHECK(miss.fn == 2);
  CHECK(miss.tp + miss.fp + miss.tn == 0);

  std::vector<std::string> too_short = {"1"};
  CHECK_THROWS_AS(confusion(all_pos, too_short, "1"), Error);
}

TEST_CASE("the reconstructed 31-row confusion") {
  ConfusionMatrix c = screening_counts();
  CHECK(c.tp == 1);
  CHECK(c.fp == 2);
  CHECK(c.tn == 20);
  CHECK(c.fn == 8);
  CHECK(c.total() == 31);
}

TEST_CASE("basic metrics on small exact cases") {
  std::vector<std::string> truth = {"1", "0"};
  std::vector<std::string> pred = {"1", "0"};
  BasicMetrics perfect = basic_metrics(confusion(truth, pred, "1"));
  CHECK(*perfect.accuracy == 1.0);
  CHECK(*perfect.f1 == 1.0);

  BasicMetrics m = basic_metrics(screening_counts());
  CHECK(std::abs(*m.accuracy - 21.0 / 31.0) < 1e-12);
  CHECK(std::abs(*m.precision_paper - 21.0 / 31.0) < 1e-12);
  CHECK(std::abs(*m.recall_paper - 21.0 / 31.0) < 1e-12);
  CHECK(std::abs(*m.f1 - 21.0 / 31.0) < 1e-12);
  // conventional macro values for the same counts
  CHECK(std::abs(*m.precision_macro - 0.5 * (1.0 / 3.0 + 20.0 / 28.0)) < 1e-12);
  CHECK(std::abs(*m.recall_macro - 0.5 * (1.0 / 9.0 + 20.0 / 22.0)) < 1e-12);

  std::vector<std::string> t2 = {"1", "0"};
  std::vector<std::string> wrong = {"0", "1"};
  BasicMetrics zero = basic_metrics(confusion(t2, wrong, "1"));
  CHECK(*zero.accuracy == 0.0);
  CHECK(!zero.f1.has_value());  // precision + recall both 0
}

TEST_CASE("pooled precision equals accuracy on binary problems") {
  oracle::Rng rng(53);
  for (int c = 0; c < 200; ++c) {
    std::vector<std::string> truth, pred;
    std::size_t n = 1 + rng.index(40);
    for (std::size_t i = 0; i < n; ++i) {
      truth.push_back(rng.index(2) == 0 ? "0" : "1");
      pred.push_back(rng.index(2) == 0 ? "0" : "1");
    }
    ConfusionMatrix cm = confusion(truth, pred, "1");
    BasicMetrics m = basic_metrics(cm);
    CHECK(*m.precision_paper == *m.accuracy);
    CHECK(*m.recall_paper == *m.accuracy);
  }
}

TEST_CASE("clinical metrics reproduce the reconstructed screening row") {
  ClinicalMetrics m = clinical_metrics(screening_counts());
  CHECK(std::abs(*m.specificity - 20.0 / 22.0) < 1e-12);
  CHECK(std::abs(*m.ppv - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(*m.npv - 20.0 / 28.0) < 1e-12);
}

TEST_CASE("clinical metrics: degenerate denominators") {
  std::vector<std::string> truth = {"1", "0"};
  std::vector<std::string> pred = {"1", "0"};
  ClinicalMetrics m = clinical_metrics(confusion(truth, pred, "1"));
  CHECK(*m.specificity == 1.0);  // fp = 0, tn > 0

  std::vector<std::string> all_pos = {"1", "1"};
  ClinicalMetrics undef = clinical_metrics(confusion(all_pos, all_pos, "1"));
  CHECK(!undef.npv.has_value());  // tn = 0, fn = 0
  CHECK_THROWS_AS(require_metric(undef.npv, "npv"), Error);
  try {
    require_metric(undef.npv, "npv");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UndefinedMetric);
  }
}

TEST_CASE("every defined metric recomputes from the confusion counts") {
  oracle::Rng rng(59);
  for (int c = 0; c < 200; ++c) {
    std::vector<std::string> truth, pred;
    std::size_t n = 2 + rng.index(50);
    for (std::size_t i = 0; i < n; ++i) {
      truth.push_back(rng.index(2) == 0 ? "neg" : "pos");
      pred.push_back(rng.index(2) == 0 ? "neg" : "pos");
    }
    ConfusionMatrix cm = confusion(truth, pred, "pos");
    BasicMetrics b = basic_metrics(cm);
    ClinicalMetrics k = clinical_metrics(cm);
    double tp = static_cast<double>(cm.tp), fp = static_cast<double>(cm.fp);
    double tn = static_cast<double>(cm.tn), fn = static_cast<double>(cm.fn);

    CHECK(std::abs(*b.accuracy - (tp + tn) / (tp + fp + fn + tn)) < 1e-12);
    if (k.specificity) CHECK(std::abs(*k.specificity - tn / (tn + fp)) < 1e-12);
    if (k.ppv) CHECK(std::abs(*k.ppv - tp / (tp + fp)) < 1e-12);
    if (k.npv) CHECK(std::abs(*k.npv - tn / (tn + fn)) < 1e-12);
    for (const auto& value : {k.specificity, k.ppv, k.npv})
      if (value) {
        CHECK(*value >= 0.0);
        CHECK(*value <= 1.0);
      }
  }
}

TEST_CASE("run_single on the toy table produces a coherent report") {
  Dataset d = testutil::table1();
  RunParams params;
  params.criterion = CriterionKind::Fidelity;
  params.train_fraction = 0.9;  // 4 rows -> 3 train / 1 test
  params.seed = 5;
  TrainedRun run = run_single(d, "toy", "1", params);
  CHECK(run.report.confusion.total() == 1);
  CHECK(run.report.dataset == "toy");
  CHECK(run.report.criterion == CriterionKind::Fidelity);
}

TEST_CASE("benchmark: haberman cells evaluate 31 rows under every criterion") {
  BenchmarkConfig config;
  config.datasets = {"haberman"};
  std::vector<EvaluationReport> reports = run_benchmark(config);
  REQUIRE(reports.size() == 4);
  for (const EvaluationReport& r : reports) {
    CHECK(r.confusion.total() == 31);
    CHECK(r.dataset == "haberman");
    CHECK(r.seed == 42);
  }
}

TEST_CASE("benchmark determinism: identical configs give identical documents") {
  BenchmarkConfig config;
  config.datasets = {"haberman", "seeds"};
  config.criteria = {CriterionKind::Fidelity, CriterionKind::Gini};
  std::vector<EvaluationReport> a = run_benchmark(config);
  std::vector<EvaluationReport> b = run_benchmark(config);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(reports_equal(a[i], b[i]));
  CHECK(emit_report(a, ReportFormat::Json) == emit_report(b, ReportFormat::Json));
  CHECK(emit_report(a, ReportFormat::Csv) == emit_report(b, ReportFormat::Csv));
}

TEST_CASE("seeds: fidelity and QIG cells both complete") {
  BenchmarkConfig config;
  config.datasets = {"seeds"};
  config.criteria = {CriterionKind::Fidelity, CriterionKind::Qig};
  std::vector<EvaluationReport> reports = run_benchmark(config);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].criterion == CriterionKind::Fidelity);
  CHECK(reports[1].criterion == CriterionKind::Qig);
  for (const EvaluationReport& r : reports) CHECK(r.confusion.total() == 14);
}

TEST_CASE("emit_report: csv layout and percent formatting") {
  EvaluationReport r;
  r.dataset = "toy";
  r.criterion = CriterionKind::Cig;
  r.seed = 7;
  r.bins = 2;
  r.confusion = screening_counts();
  r.basic = basic_metrics(r.confusion);
  r.clinical = clinical_metrics(r.confusion);
  r.tree = {2, 4, {2, 2, 2, 2}, true};

  std::string csv = emit_report({&r, 1}, ReportFormat::Csv);
  std::istringstream lines(csv);
  std::string header, row, extra;
  CHECK(std::getline(lines, header));
  CHECK(std::getline(lines, row));
  CHECK(!std::getline(lines, extra));
  CHECK(header.find("dataset,criterion,seed,bins,tp,fp,tn,fn,accuracy") == 0);
  CHECK(row.find("toy,cig,7,2,1,2,20,8,") == 0);
  CHECK(row.find("67.74") != std::string::npos);   // accuracy 21/31
  CHECK(row.find("90.91") != std::string::npos);   // specificity 20/22 rounded
  CHECK(row.find("33.33") != std::string::npos);   // ppv
  CHECK(row.find("71.43") != std::string::npos);   // npv 20/28 rounded
  CHECK(row.find("true") != std::string::npos);

  CHECK_THROWS_AS(emit_report({}, ReportFormat::Csv), Error);
}

TEST_CASE("emit_report: markdown table has one row per report") {
  BenchmarkConfig config;
  config.datasets = {"haberman"};
  std::vector<EvaluationReport> reports = run_benchmark(config);
  std::string md = emit_report(reports, ReportFormat::Markdown);
  std::size_t lines = static_cast<std::size_t>(std::count(md.begin(), md.end(), '\n'));
  CHECK(lines == reports.size() + 2);  // header + separator + rows
  CHECK(md.find("| haberman | fidelity |") != std::string::npos);
}

TEST_CASE("JSON reports round-trip exactly") {
  BenchmarkConfig config;
  config.datasets = {"haberman"};
  config.criteria = {CriterionKind::Fidelity, CriterionKind::Cig};
  std::vector<EvaluationReport> reports = run_benchmark(config);

  std::string json_doc = emit_report(reports, ReportFormat::Json);
  std::vector<EvaluationReport> parsed = parse_reports(json_doc);
  REQUIRE(parsed.size() == reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i)
    CHECK(reports_equal(reports[i], parsed[i]));
  // and the re-emitted document is byte-identical
  CHECK(emit_report(parsed, ReportFormat::Json) == json_doc);
}

TEST_CASE("undefined metrics emit as empty CSV cells and JSON nulls") {
  std::vector<std::string> all_pos = {"1", "1"};
  EvaluationReport r;
  r.dataset = "tiny";
  r.confusion = confusion(all_pos, all_pos, "1");
  r.basic = basic_metrics(r.confusion);
  r.clinical = clinical_metrics(r.confusion);
  r.tree = {0, 1, {0}, true};

  std::string csv = emit_report({&r, 1}, ReportFormat::Csv);
  CHECK(csv.find(",,") != std::string::npos);
  std::string json_doc = emit_report({&r, 1}, ReportFormat::Json);
  CHECK(json_doc.find("\"npv\": null") != std::string::npos);
  std::vector<EvaluationReport> parsed = parse_reports(json_doc);
  CHECK(!parsed[0].clinical.npv.has_value());
}
