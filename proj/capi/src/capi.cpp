// SPDX-License-Identifier: Apache-2.0
#include "qfdt.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qfdt/evaluation.hpp"
#include "qfdt/format.hpp"

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

thread_local std::string g_last_error;

qfdt_status status_for(qfdt::ErrorCode code) {
  switch (qfdt::error_class(code)) {
    case qfdt::ErrorClass::Config: return QFDT_ERR_CONFIG;
    case qfdt::ErrorClass::Data: return QFDT_ERR_DATA;
    case qfdt::ErrorClass::Numeric: return QFDT_ERR_NUMERIC;
  }
  return QFDT_ERR_INTERNAL;
}

template <typename F>
qfdt_status guarded(F&& body) noexcept {
  try {
    body();
    g_last_error.clear();
    return QFDT_OK;
  } catch (const qfdt::Error& e) {
    g_last_error = e.what();
    return status_for(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QFDT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return QFDT_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) qfdt::raise(qfdt::ErrorCode::InvalidArgument, what);
}

json parse_json_arg(const char* text, const char* what) {
  if (text == nullptr || *text == '\0') return json::object();
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object())
    qfdt::raise(qfdt::ErrorCode::InvalidArgument,
                std::string(what) + " is not a JSON object");
  return j;
}

struct TrainOptions {
  qfdt::RunParams params;
  bool has_split = false;  // train_fraction present: train on the split
  std::optional<std::string> positive_label;
};

TrainOptions parse_config(const json& j) {
  TrainOptions opt;
  try {
    if (j.contains("criterion"))
      opt.params.criterion = qfdt::parse_criterion(j["criterion"].get<std::string>());
    if (j.contains("mode"))
      opt.params.mode = qfdt::parse_amplitude_mode(j["mode"].get<std::string>());
    if (j.contains("bins")) opt.params.bins = j["bins"].get<int>();
    if (j.contains("strategy"))
      opt.params.strategy = qfdt::parse_bin_strategy(j["strategy"].get<std::string>());
    if (j.contains("seed")) opt.params.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("train_fraction") && !j["train_fraction"].is_null()) {
      opt.params.train_fraction = j["train_fraction"].get<double>();
      opt.has_split = true;
    }
    if (j.contains("max_depth") && !j["max_depth"].is_null())
      opt.params.max_depth = j["max_depth"].get<int>();
    if (j.contains("positive_label") && !j["positive_label"].is_null())
      opt.positive_label = j["positive_label"].get<std::string>();
  } catch (const json::exception& e) {
    qfdt::raise(qfdt::ErrorCode::InvalidArgument,
                std::string("bad config value: ") + e.what());
  }
  if (opt.params.bins < 2)
    qfdt::raise(qfdt::ErrorCode::InvalidArgument, "bins must be >= 2");
  if (opt.has_split &&
      !(opt.params.train_fraction > 0.0 && opt.params.train_fraction < 1.0))
    qfdt::raise(qfdt::ErrorCode::InvalidArgument, "train_fraction must be in (0, 1)");
  return opt;
}

}  // namespace

struct qfdt_dataset {
  qfdt::Dataset data;
  std::string name;
  std::string positive_label;
};

struct qfdt_model {
  qfdt::TreeModel model;
};

extern "C" {

const char* qfdt_version(void) { return "0.1.0"; }

const char* qfdt_last_error(void) { return g_last_error.c_str(); }

void qfdt_string_free(char* s) { std::free(s); }

qfdt_status qfdt_dataset_open_csv(const char* path, const char* options_json,
                                  qfdt_dataset** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "path and out must not be NULL");
    json j = parse_json_arg(options_json, "options_json");

    qfdt::CsvOptions opt;
    std::string positive;
    std::string name = std::filesystem::path(path).stem().string();
    try {
      if (j.contains("delimiter")) {
        std::string d = j["delimiter"].get<std::string>();
        opt.delimiter = (d == "ws") ? '\0' : (d.empty() ? ',' : d[0]);
      }
      if (j.contains("header")) {
        std::string h = j["header"].get<std::string>();
        opt.header = h == "yes"  ? qfdt::HeaderMode::Yes
                     : h == "no" ? qfdt::HeaderMode::No
                                 : qfdt::HeaderMode::Auto;
      }
      if (j.contains("missing"))
        opt.missing = j["missing"].get<std::string>() == "error"
                          ? qfdt::MissingPolicy::Error
                          : qfdt::MissingPolicy::Drop;
      if (j.contains("label_column")) opt.label_column = j["label_column"].get<int>();
      if (j.contains("drop_columns"))
        opt.drop_columns = j["drop_columns"].get<std::vector<int>>();
      if (j.contains("allowed_labels"))
        opt.allowed_labels = j["allowed_labels"].get<std::vector<std::string>>();
      if (j.contains("keep_labels"))
        opt.keep_labels = j["keep_labels"].get<std::vector<std::string>>();
      if (j.contains("label_names"))
        opt.label_names =
            j["label_names"].get<std::map<std::string, std::string>>();
      if (j.contains("positive_label")) positive = j["positive_label"].get<std::string>();
      if (j.contains("name")) name = j["name"].get<std::string>();
    } catch (const json::exception& e) {
      qfdt::raise(qfdt::ErrorCode::InvalidArgument,
                  std::string("bad option value: ") + e.what());
    }

    qfdt::Dataset d = qfdt::load_csv(path, qfdt::DatasetSchema{}, opt);
    if (positive.empty()) {
      // default positive class: lexicographically largest observed label
      for (const auto& [label, count] : d.label_counts()) positive = label;
    }
    *out = new qfdt_dataset{std::move(d), std::move(name), std::move(positive)};
  });
}

qfdt_status qfdt_dataset_open_builtin(const char* name, const char* data_dir,
                                      qfdt_dataset** out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "name and out must not be NULL");
    qfdt::BuiltinDataset b =
        qfdt::prepare_builtin(name, data_dir == nullptr ? "" : data_dir);
    *out = new qfdt_dataset{std::move(b.dataset), name, std::move(b.positive_label)};
  });
}

qfdt_status qfdt_dataset_info(const qfdt_dataset* d, char** json_out) {
  return guarded([&] {
    require(d != nullptr && json_out != nullptr, "dataset and out must not be NULL");
    ordered_json j;
    j["name"] = d->name;
    j["rows"] = d->data.num_rows();
    j["features"] = d->data.schema.feature_names;
    ordered_json kinds = ordered_json::array();
    for (qfdt::FeatureKind k : d->data.schema.feature_kinds)
      kinds.push_back(k == qfdt::FeatureKind::Continuous ? "continuous" : "categorical");
    j["kinds"] = std::move(kinds);
    j["label_name"] = d->data.schema.label_name;
    j["positive_label"] = d->positive_label;
    j["label_counts"] = d->data.label_counts();
    j["rows_read"] = d->data.stats.rows_read;
    j["rows_dropped_missing"] = d->data.stats.rows_dropped_missing;
    j["rows_filtered_label"] = d->data.stats.rows_filtered_label;
    j["label_counts_pre_drop"] = d->data.stats.label_counts_pre_drop;
    j["provenance"] = d->data.provenance;
    *json_out = dup_string(j.dump(2) + "\n");
  });
}

void qfdt_dataset_close(qfdt_dataset* d) { delete d; }

qfdt_status qfdt_train(const qfdt_dataset* d, const char* config_json,
                       qfdt_model** out, char** summary_json_out) {
  return guarded([&] {
    require(d != nullptr && out != nullptr, "dataset and out must not be NULL");
    TrainOptions opt = parse_config(parse_json_arg(config_json, "config_json"));

    qfdt::Dataset train_raw;
    if (opt.has_split) {
      train_raw = qfdt::train_test_split(d->data, opt.params.train_fraction,
                                         opt.params.seed)
                      .first;
    } else {
      train_raw = d->data;
    }
    auto [train, disc] =
        qfdt::discretize(train_raw, opt.params.bins, opt.params.strategy);

    qfdt::TreeConfig tree_config;
    tree_config.mode = opt.params.mode;
    tree_config.max_depth = opt.params.max_depth;
    qfdt::TreeModel model =
        qfdt::build_tree(train, opt.params.criterion, tree_config);

    if (summary_json_out != nullptr) {
      std::vector<qfdt::FeatureScore> scores =
          qfdt::score_features(train, opt.params.criterion, opt.params.mode);
      qfdt::TreeStats stats = qfdt::tree_stats(model);

      ordered_json j;
      j["dataset"] = d->name;
      j["criterion"] = qfdt::criterion_name(opt.params.criterion);
      j["mode"] = qfdt::amplitude_mode_name(opt.params.mode);
      j["bins"] = opt.params.bins;
      j["rows_trained"] = train.num_rows();
      ordered_json score_arr = ordered_json::array();
      for (const qfdt::FeatureScore& s : scores) {
        ordered_json sj;
        sj["feature"] = s.feature_index;
        sj["name"] = train.schema.feature_names[static_cast<std::size_t>(s.feature_index)];
        sj["score"] = s.score;
        score_arr.push_back(std::move(sj));
      }
      j["scores"] = std::move(score_arr);
      if (model.root->is_leaf()) {
        j["root_feature"] = nullptr;
        j["root_feature_name"] = nullptr;
      } else {
        int root = model.root->internal().rule.feature_index;
        j["root_feature"] = root;
        j["root_feature_name"] =
            model.feature_names[static_cast<std::size_t>(root)];
      }
      j["tree"] = {{"depth", stats.depth},
                   {"leaf_count", stats.leaf_count},
                   {"balanced", stats.balanced}};
      *summary_json_out = dup_string(j.dump(2) + "\n");
    }
    *out = new qfdt_model{std::move(model)};
  });
}

qfdt_status qfdt_model_save(const qfdt_model* m, const char* path) {
  return guarded([&] {
    require(m != nullptr && path != nullptr, "model and path must not be NULL");
    std::ofstream out(path, std::ios::binary);
    if (!out) qfdt::raise(qfdt::ErrorCode::IoError, std::string("cannot write '") + path + "'");
    out << qfdt::serialize(m->model);
  });
}

qfdt_status qfdt_model_open(const char* path, qfdt_model** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "path and out must not be NULL");
    std::ifstream in(path, std::ios::binary);
    if (!in) qfdt::raise(qfdt::ErrorCode::IoError, std::string("cannot open '") + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    *out = new qfdt_model{qfdt::deserialize(buf.str())};
  });
}

qfdt_status qfdt_model_to_json(const qfdt_model* m, char** json_out) {
  return guarded([&] {
    require(m != nullptr && json_out != nullptr, "model and out must not be NULL");
    *json_out = dup_string(qfdt::serialize(m->model));
  });
}

qfdt_status qfdt_model_render(const qfdt_model* m, char** text_out) {
  return guarded([&] {
    require(m != nullptr && text_out != nullptr, "model and out must not be NULL");
    *text_out = dup_string(qfdt::render_tree(m->model));
  });
}

qfdt_status qfdt_model_predict(const qfdt_model* m, const qfdt_dataset* context,
                               const char* config_json, const char* row_json,
                               char** label_out) {
  return guarded([&] {
    require(m != nullptr && row_json != nullptr && label_out != nullptr,
            "model, row_json, and out must not be NULL");
    json rj = json::parse(row_json, nullptr, false);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> row(m->model.feature_names.size(), nan);
    try {
      if (rj.is_array()) {
        if (rj.size() > row.size())
          qfdt::raise(qfdt::ErrorCode::InvalidArgument,
                      "row has more values than the model has features");
        for (std::size_t i = 0; i < rj.size(); ++i)
          if (!rj[i].is_null()) row[i] = rj[i].get<double>();
      } else if (rj.is_object()) {
        for (const auto& [key, value] : rj.items()) {
          auto it = std::find(m->model.feature_names.begin(),
                              m->model.feature_names.end(), key);
          if (it == m->model.feature_names.end())
            qfdt::raise(qfdt::ErrorCode::InvalidArgument,
                        "unknown feature '" + key + "' in row");
          row[static_cast<std::size_t>(it - m->model.feature_names.begin())] =
              value.get<double>();
        }
      } else {
        qfdt::raise(qfdt::ErrorCode::InvalidArgument,
                    "row_json must be an array or object");
      }
    } catch (const json::exception& e) {
      qfdt::raise(qfdt::ErrorCode::InvalidArgument,
                  std::string("bad row value: ") + e.what());
    }

    if (context != nullptr) {
      TrainOptions opt = parse_config(parse_json_arg(config_json, "config_json"));
      qfdt::Dataset train_raw =
          opt.has_split ? qfdt::train_test_split(context->data,
                                                 opt.params.train_fraction,
                                                 opt.params.seed)
                              .first
                        : context->data;
      qfdt::Discretizer disc =
          qfdt::Discretizer::fit(train_raw, opt.params.bins, opt.params.strategy);
      row = disc.apply_row(row);
    }
    *label_out = dup_string(qfdt::predict(m->model, row));
  });
}

void qfdt_model_close(qfdt_model* m) { delete m; }

qfdt_status qfdt_evaluate(const qfdt_model* m, const qfdt_dataset* d,
                          const char* config_json, char** report_json_out) {
  return guarded([&] {
    require(m != nullptr && d != nullptr && report_json_out != nullptr,
            "model, dataset, and out must not be NULL");
    TrainOptions opt = parse_config(parse_json_arg(config_json, "config_json"));
    std::string positive =
        opt.positive_label ? *opt.positive_label : d->positive_label;
    qfdt::EvaluationReport report =
        qfdt::evaluate_holdout(m->model, d->data, d->name, positive, opt.params);
    *report_json_out =
        dup_string(qfdt::emit_report({&report, 1}, qfdt::ReportFormat::Json));
  });
}

qfdt_status qfdt_report_format(const char* reports_json, const char* format,
                               char** document_out) {
  return guarded([&] {
    require(reports_json != nullptr && format != nullptr && document_out != nullptr,
            "reports_json, format, and out must not be NULL");
    std::vector<qfdt::EvaluationReport> reports = qfdt::parse_reports(reports_json);
    *document_out =
        dup_string(qfdt::emit_report(reports, qfdt::parse_report_format(format)));
  });
}

qfdt_status qfdt_benchmark(const char* config_json, char** document_out) {
  return guarded([&] {
    require(document_out != nullptr, "out must not be NULL");
    json j = parse_json_arg(config_json, "config_json");

    qfdt::BenchmarkConfig config;
    config.params = parse_config(j).params;
    qfdt::ReportFormat format = qfdt::ReportFormat::Csv;
    try {
      if (j.contains("datasets")) {
        auto names = j["datasets"].get<std::vector<std::string>>();
        if (!(names.size() == 1 && names[0] == "all")) config.datasets = names;
      }
      if (j.contains("criteria")) {
        auto names = j["criteria"].get<std::vector<std::string>>();
        if (!(names.size() == 1 && names[0] == "all")) {
          config.criteria.clear();
          for (const std::string& n : names)
            config.criteria.push_back(qfdt::parse_criterion(n));
        }
      }
      if (j.contains("format"))
        format = qfdt::parse_report_format(j["format"].get<std::string>());
      if (j.contains("data_dir") && !j["data_dir"].is_null())
        config.data_dir = j["data_dir"].get<std::string>();
    } catch (const json::exception& e) {
      qfdt::raise(qfdt::ErrorCode::InvalidArgument,
                  std::string("bad benchmark config: ") + e.what());
    }

    std::vector<qfdt::EvaluationReport> reports = qfdt::run_benchmark(config);
    *document_out = dup_string(qfdt::emit_report(reports, format));
  });
}

}  // extern "C"
