// SPDX-License-Identifier: Apache-2.0
#include "qfdt/evaluation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qfdt/format.hpp"

namespace qfdt {

using ordered_json = nlohmann::ordered_json;

ConfusionMatrix confusion(std::span<const std::string> truth,
                          std::span<const std::string> predicted,
                          const std::string& positive_label) {
  if (truth.size() != predicted.size())
    raise(ErrorCode::LengthMismatch,
          "truth has " + std::to_string(truth.size()) + " rows, predictions " +
              std::to_string(predicted.size()));
  if (truth.empty()) raise(ErrorCode::LengthMismatch, "confusion over empty vectors");

  std::set<std::string> label_set(truth.begin(), truth.end());
  label_set.insert(predicted.begin(), predicted.end());

  ConfusionMatrix c;
  c.positive_label = positive_label;
  c.labels.assign(label_set.begin(), label_set.end());
  c.grid.assign(c.labels.size() * c.labels.size(), 0);
  auto index_of = [&](const std::string& l) {
    return static_cast<std::size_t>(
        std::lower_bound(c.labels.begin(), c.labels.end(), l) - c.labels.begin());
  };
  for (std::size_t r = 0; r < truth.size(); ++r)
    ++c.grid[index_of(truth[r]) * c.labels.size() + index_of(predicted[r])];

  for (std::size_t r = 0; r < truth.size(); ++r) {
    bool truth_pos = truth[r] == positive_label;
    bool pred_pos = predicted[r] == positive_label;
    if (truth_pos && pred_pos) ++c.tp;
    else if (!truth_pos && pred_pos) ++c.fp;
    else if (truth_pos && !pred_pos) ++c.fn;
    else ++c.tn;
  }
  return c;
}

namespace {

std::optional<double> ratio(double num, double den) {
  if (den == 0.0) return std::nullopt;
  return num / den;
}

struct PerClass {
  std::int64_t tp = 0, fp = 0, fn = 0;
};

std::vector<PerClass> per_class_counts(const ConfusionMatrix& c) {
  const std::size_t m = c.labels.size();
  std::vector<PerClass> out(m);
  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t p = 0; p < m; ++p) {
      std::int64_t n = c.grid_at(t, p);
      if (t == p) {
        out[t].tp += n;
      } else {
        out[t].fn += n;
        out[p].fp += n;
      }
    }
  return out;
}

}  // namespace

BasicMetrics basic_metrics(const ConfusionMatrix& c) {
  BasicMetrics m;
  const double total = static_cast<double>(c.total());
  m.accuracy = ratio(static_cast<double>(c.tp + c.tn), total);

  // pooled counts over all classes: sum TP / (sum TP + sum FP) and the
  // FN-denominator analogue
  auto per_class = per_class_counts(c);
  std::int64_t sum_tp = 0, sum_fp = 0, sum_fn = 0;
  for (const PerClass& pc : per_class) {
    sum_tp += pc.tp;
    sum_fp += pc.fp;
    sum_fn += pc.fn;
  }
  m.precision_paper = ratio(static_cast<double>(sum_tp),
                            static_cast<double>(sum_tp + sum_fp));
  m.recall_paper = ratio(static_cast<double>(sum_tp),
                         static_cast<double>(sum_tp + sum_fn));
  if (m.precision_paper && m.recall_paper &&
      *m.precision_paper + *m.recall_paper > 0.0)
    m.f1 = 2.0 * (*m.precision_paper * *m.recall_paper) /
           (*m.precision_paper + *m.recall_paper);

  double prec_sum = 0.0, rec_sum = 0.0;
  bool prec_defined = true, rec_defined = true;
  for (const PerClass& pc : per_class) {
    auto prec = ratio(static_cast<double>(pc.tp), static_cast<double>(pc.tp + pc.fp));
    auto rec = ratio(static_cast<double>(pc.tp), static_cast<double>(pc.tp + pc.fn));
    if (prec) prec_sum += *prec; else prec_defined = false;
    if (rec) rec_sum += *rec; else rec_defined = false;
  }
  const double m_classes = static_cast<double>(per_class.size());
  if (prec_defined) m.precision_macro = prec_sum / m_classes;
  if (rec_defined) m.recall_macro = rec_sum / m_classes;
  return m;
}

ClinicalMetrics clinical_metrics(const ConfusionMatrix& c) {
  ClinicalMetrics m;
  m.specificity = ratio(static_cast<double>(c.tn), static_cast<double>(c.tn + c.fp));
  m.ppv = ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fp));
  m.npv = ratio(static_cast<double>(c.tn), static_cast<double>(c.tn + c.fn));
  return m;
}

double require_metric(const std::optional<double>& value, const std::string& name) {
  if (!value)
    raise(ErrorCode::UndefinedMetric, "metric '" + name + "' has a zero denominator");
  return *value;
}

namespace {

EvaluationReport report_on(const TreeModel& model, const Dataset& test,
                           const std::string& dataset_name,
                           const std::string& positive_label, const RunParams& params) {
  std::vector<std::string> truth = test.labels();
  std::vector<std::string> predicted;
  predicted.reserve(test.num_rows());
  for (const Row& row : test.rows) predicted.push_back(predict(model, row.values));

  EvaluationReport report;
  report.dataset = dataset_name;
  report.criterion = model.criterion;
  report.seed = params.seed;
  report.bins = params.bins;
  report.confusion = confusion(truth, predicted, positive_label);
  report.basic = basic_metrics(report.confusion);
  report.clinical = clinical_metrics(report.confusion);
  report.tree = tree_stats(model);
  return report;
}

}  // namespace

TrainedRun run_single(const Dataset& raw, const std::string& dataset_name,
                      const std::string& positive_label, const RunParams& params) {
  auto [train_raw, test_raw] = train_test_split(raw, params.train_fraction, params.seed);
  Discretizer disc = Discretizer::fit(train_raw, params.bins, params.strategy);
  Dataset train = disc.apply(train_raw);
  Dataset test = disc.apply(test_raw);

  TreeConfig tree_config;
  tree_config.mode = params.mode;
  tree_config.max_depth = params.max_depth;
  TreeModel model = build_tree(train, params.criterion, tree_config);
  EvaluationReport report = report_on(model, test, dataset_name, positive_label, params);
  return {std::move(model), std::move(disc), std::move(report)};
}

EvaluationReport evaluate_holdout(const TreeModel& model, const Dataset& raw,
                                  const std::string& dataset_name,
                                  const std::string& positive_label,
                                  const RunParams& params) {
  auto [train_raw, test_raw] = train_test_split(raw, params.train_fraction, params.seed);
  Discretizer disc = Discretizer::fit(train_raw, params.bins, params.strategy);
  Dataset test = disc.apply(test_raw);
  return report_on(model, test, dataset_name, positive_label, params);
}

std::vector<EvaluationReport> run_benchmark(const BenchmarkConfig& config) {
  std::vector<EvaluationReport> reports;
  reports.reserve(config.datasets.size() * config.criteria.size());
  for (const std::string& name : config.datasets) {
    BuiltinDataset builtin = prepare_builtin(name, config.data_dir);
    for (CriterionKind criterion : config.criteria) {
      RunParams params = config.params;
      params.criterion = criterion;
      reports.push_back(
          run_single(builtin.dataset, name, builtin.positive_label, params).report);
    }
  }
  return reports;
}

namespace {

bool opt_equal(const std::optional<double>& a, const std::optional<double>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || *a == *b;
}

constexpr const char* kColumns[] = {
    "dataset",   "criterion",       "seed",         "bins",
    "tp",        "fp",              "tn",           "fn",
    "accuracy",  "precision_paper", "recall_paper", "f1",
    "precision_macro", "recall_macro", "specificity", "ppv", "npv",
    "tree_depth", "leaf_count",     "balanced"};

std::vector<std::pair<const char*, std::optional<double>>> metric_fields(
    const EvaluationReport& r) {
  return {{"accuracy", r.basic.accuracy},
          {"precision_paper", r.basic.precision_paper},
          {"recall_paper", r.basic.recall_paper},
          {"f1", r.basic.f1},
          {"precision_macro", r.basic.precision_macro},
          {"recall_macro", r.basic.recall_macro},
          {"specificity", r.clinical.specificity},
          {"ppv", r.clinical.ppv},
          {"npv", r.clinical.npv}};
}

ordered_json report_to_json(const EvaluationReport& r) {
  ordered_json j;
  j["dataset"] = r.dataset;
  j["criterion"] = criterion_name(r.criterion);
  j["seed"] = r.seed;
  j["bins"] = r.bins;
  j["positive_label"] = r.confusion.positive_label;
  j["tp"] = r.confusion.tp;
  j["fp"] = r.confusion.fp;
  j["tn"] = r.confusion.tn;
  j["fn"] = r.confusion.fn;
  for (const auto& [name, value] : metric_fields(r))
    j[name] = value ? ordered_json(*value) : ordered_json(nullptr);
  j["tree_depth"] = r.tree.depth;
  j["leaf_count"] = r.tree.leaf_count;
  j["balanced"] = r.tree.balanced;
  j["labels"] = r.confusion.labels;
  j["grid"] = r.confusion.grid;
  return j;
}

std::string emit_csv(std::span<const EvaluationReport> reports) {
  std::ostringstream out;
  for (std::size_t i = 0; i < std::size(kColumns); ++i)
    out << kColumns[i] << (i + 1 < std::size(kColumns) ? "," : "\n");
  for (const EvaluationReport& r : reports) {
    out << r.dataset << ',' << criterion_name(r.criterion) << ',' << r.seed << ','
        << r.bins << ',' << r.confusion.tp << ',' << r.confusion.fp << ','
        << r.confusion.tn << ',' << r.confusion.fn;
    for (const auto& [name, value] : metric_fields(r))
      out << ',' << (value ? format_percent(*value) : std::string());
    out << ',' << r.tree.depth << ',' << r.tree.leaf_count << ','
        << (r.tree.balanced ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string emit_markdown(std::span<const EvaluationReport> reports) {
  std::ostringstream out;
  out << '|';
  for (const char* col : kColumns) out << ' ' << col << " |";
  out << "\n|";
  for (std::size_t i = 0; i < std::size(kColumns); ++i) out << "---|";
  out << '\n';
  for (const EvaluationReport& r : reports) {
    out << "| " << r.dataset << " | " << criterion_name(r.criterion) << " | " << r.seed
        << " | " << r.bins << " | " << r.confusion.tp << " | " << r.confusion.fp
        << " | " << r.confusion.tn << " | " << r.confusion.fn;
    for (const auto& [name, value] : metric_fields(r))
      out << " | " << (value ? format_percent(*value) : std::string("-"));
    out << " | " << r.tree.depth << " | " << r.tree.leaf_count << " | "
        << (r.tree.balanced ? "true" : "false") << " |\n";
  }
  return out.str();
}

}  // namespace

bool reports_equal(const EvaluationReport& a, const EvaluationReport& b) {
  auto ma = metric_fields(a);
  auto mb = metric_fields(b);
  for (std::size_t i = 0; i < ma.size(); ++i)
    if (!opt_equal(ma[i].second, mb[i].second)) return false;
  return a.dataset == b.dataset && a.criterion == b.criterion && a.seed == b.seed &&
         a.bins == b.bins && a.confusion.tp == b.confusion.tp &&
         a.confusion.fp == b.confusion.fp && a.confusion.tn == b.confusion.tn &&
         a.confusion.fn == b.confusion.fn &&
         a.confusion.positive_label == b.confusion.positive_label &&
         a.confusion.labels == b.confusion.labels && a.confusion.grid == b.confusion.grid &&
         a.tree.depth == b.tree.depth && a.tree.leaf_count == b.tree.leaf_count &&
         a.tree.balanced == b.tree.balanced;
}

std::string emit_report(std::span<const EvaluationReport> reports, ReportFormat format) {
  if (reports.empty()) raise(ErrorCode::InvalidArgument, "no reports to emit");
  switch (format) {
    case ReportFormat::Csv:
      return emit_csv(reports);
    case ReportFormat::Markdown:
      return emit_markdown(reports);
    case ReportFormat::Json: {
      ordered_json arr = ordered_json::array();
      for (const EvaluationReport& r : reports) arr.push_back(report_to_json(r));
      return arr.dump(2) + "\n";
    }
  }
  raise(ErrorCode::InvalidArgument, "unhandled report format");
}

std::vector<EvaluationReport> parse_reports(const std::string& json_text) {
  nlohmann::json arr = nlohmann::json::parse(json_text, nullptr, false);
  if (arr.is_discarded() || !arr.is_array())
    raise(ErrorCode::ParseError, "report document is not a JSON array");
  std::vector<EvaluationReport> reports;
  for (const auto& j : arr) {
    EvaluationReport r;
    r.dataset = j.at("dataset").get<std::string>();
    r.criterion = parse_criterion(j.at("criterion").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.bins = j.at("bins").get<int>();
    r.confusion.positive_label = j.at("positive_label").get<std::string>();
    r.confusion.tp = j.at("tp").get<std::int64_t>();
    r.confusion.fp = j.at("fp").get<std::int64_t>();
    r.confusion.tn = j.at("tn").get<std::int64_t>();
    r.confusion.fn = j.at("fn").get<std::int64_t>();
    auto opt = [&](const char* name) -> std::optional<double> {
      if (!j.contains(name) || j[name].is_null()) return std::nullopt;
      return j[name].get<double>();
    };
    r.basic.accuracy = opt("accuracy");
    r.basic.precision_paper = opt("precision_paper");
    r.basic.recall_paper = opt("recall_paper");
    r.basic.f1 = opt("f1");
    r.basic.precision_macro = opt("precision_macro");
    r.basic.recall_macro = opt("recall_macro");
    r.clinical.specificity = opt("specificity");
    r.clinical.ppv = opt("ppv");
    r.clinical.npv = opt("npv");
    r.tree.depth = j.at("tree_depth").get<int>();
    r.tree.leaf_count = j.at("leaf_count").get<std::size_t>();
    r.tree.balanced = j.at("balanced").get<bool>();
    r.confusion.labels = j.at("labels").get<std::vector<std::string>>();
    r.confusion.grid = j.at("grid").get<std::vector<std::int64_t>>();
    reports.push_back(std::move(r));
  }
  return reports;
}

const char* report_format_name(ReportFormat f) noexcept {
  switch (f) {
    case ReportFormat::Json: return "json";
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Markdown: return "markdown";
  }
  return "?";
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "markdown") return ReportFormat::Markdown;
  raise(ErrorCode::InvalidArgument, "unknown report format '" + name + "'");
}

}  // namespace qfdt
