// SPDX-License-Identifier: Apache-2.0
//
// qfdt command-line front end: train, eval, predict, bench, inspect.
// Drives the toolkit exclusively through the shared library's C API.
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfdt.h"

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

int fail(qfdt_status status) {
  std::cerr << "qfdt: " << qfdt_last_error() << '\n';
  return static_cast<int>(status);
}

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { qfdt_string_free(ptr); }
  std::string str() const { return ptr == nullptr ? std::string() : ptr; }
};

struct DatasetHandle {
  qfdt_dataset* ptr = nullptr;
  ~DatasetHandle() { qfdt_dataset_close(ptr); }
};

struct ModelHandle {
  qfdt_model* ptr = nullptr;
  ~ModelHandle() { qfdt_model_close(ptr); }
};

struct CommonOpts {
  std::string data_path;
  std::string builtin;
  std::string data_dir;
  std::string criterion = "fidelity";
  std::string mode = "joint";
  std::string strategy = "equal_frequency";
  int bins = 2;
  std::optional<double> train_fraction;
  std::uint64_t seed = 42;
  std::optional<int> max_depth;
  std::string positive;
};

void add_data_flags(CLI::App* cmd, CommonOpts& o) {
  auto* data = cmd->add_option("--data", o.data_path, "CSV file to load");
  auto* builtin = cmd->add_option(
      "--builtin", o.builtin, "built-in dataset: haberman, wisconsin, or seeds");
  data->excludes(builtin);
  builtin->excludes(data);
  cmd->add_option("--data-dir", o.data_dir,
                  "directory with the built-in data files (default: $QFDT_DATA_DIR, ./data)");
}

void add_pipeline_flags(CLI::App* cmd, CommonOpts& o, bool default_fraction) {
  cmd->add_option("--bins", o.bins, "bins for continuous features")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  cmd->add_option("--strategy", o.strategy, "equal_frequency or equal_width")
      ->capture_default_str();
  auto* frac = cmd->add_option("--train-fraction", o.train_fraction,
                               "fraction of rows used for training");
  if (default_fraction) frac->default_val(0.9);
  cmd->add_option("--seed", o.seed, "split seed")->capture_default_str();
}

qfdt_status open_dataset(const CommonOpts& o, DatasetHandle& out) {
  if (!o.builtin.empty())
    return qfdt_dataset_open_builtin(o.builtin.c_str(),
                                     o.data_dir.empty() ? nullptr : o.data_dir.c_str(),
                                     &out.ptr);
  if (o.data_path.empty()) {
    std::cerr << "qfdt: either --data or --builtin is required\n";
    return QFDT_ERR_CONFIG;
  }
  json options = json::object();
  if (!o.positive.empty()) options["positive_label"] = o.positive;
  return qfdt_dataset_open_csv(o.data_path.c_str(), options.dump().c_str(), &out.ptr);
}

std::string make_config(const CommonOpts& o, bool with_criterion = true) {
  ordered_json j;
  if (with_criterion) j["criterion"] = o.criterion;
  j["mode"] = o.mode;
  j["bins"] = o.bins;
  j["strategy"] = o.strategy;
  if (o.train_fraction) j["train_fraction"] = *o.train_fraction;
  j["seed"] = o.seed;
  if (o.max_depth) j["max_depth"] = *o.max_depth;
  if (!o.positive.empty()) j["positive_label"] = o.positive;
  return j.dump();
}

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "qfdt: cannot write '" << out_path << "'\n";
    return static_cast<int>(QFDT_ERR_DATA);
  }
  out << text;
  return 0;
}

int run_train(const CommonOpts& o, const std::string& model_out) {
  DatasetHandle dataset;
  if (qfdt_status st = open_dataset(o, dataset); st != QFDT_OK) return fail(st);

  ModelHandle model;
  OwnedString summary;
  if (qfdt_status st = qfdt_train(dataset.ptr, make_config(o).c_str(), &model.ptr,
                                  &summary.ptr);
      st != QFDT_OK)
    return fail(st);
  if (qfdt_status st = qfdt_model_save(model.ptr, model_out.c_str()); st != QFDT_OK)
    return fail(st);

  json s = json::parse(summary.str());
  std::cout << "dataset: " << s["dataset"].get<std::string>() << " ("
            << s["rows_trained"] << " rows trained)\n"
            << "criterion: " << s["criterion"].get<std::string>() << " (mode "
            << s["mode"].get<std::string>() << ", bins " << s["bins"] << ")\n"
            << "scores:\n";
  for (const auto& sc : s["scores"]) {
    std::printf("  %-28s %.9f\n", sc["name"].get<std::string>().c_str(),
                sc["score"].get<double>());
  }
  if (s["root_feature_name"].is_null())
    std::cout << "root: (leaf-only tree)\n";
  else
    std::cout << "root: " << s["root_feature_name"].get<std::string>() << "\n";
  std::cout << "tree: depth " << s["tree"]["depth"] << ", " << s["tree"]["leaf_count"]
            << " leaves, " << (s["tree"]["balanced"].get<bool>() ? "balanced" : "unbalanced")
            << "\n"
            << "model written to " << model_out << "\n";
  return 0;
}

int run_eval(const CommonOpts& o, const std::string& model_path,
             const std::string& format, const std::string& out_path) {
  DatasetHandle dataset;
  if (qfdt_status st = open_dataset(o, dataset); st != QFDT_OK) return fail(st);
  ModelHandle model;
  if (qfdt_status st = qfdt_model_open(model_path.c_str(), &model.ptr); st != QFDT_OK)
    return fail(st);

  OwnedString report;
  if (qfdt_status st = qfdt_evaluate(model.ptr, dataset.ptr,
                                     make_config(o, /*with_criterion=*/false).c_str(),
                                     &report.ptr);
      st != QFDT_OK)
    return fail(st);
  OwnedString document;
  if (qfdt_status st =
          qfdt_report_format(report.ptr, format.c_str(), &document.ptr);
      st != QFDT_OK)
    return fail(st);
  return write_output(document.str(), out_path);
}

int run_predict(const CommonOpts& o, const std::string& model_path,
                const std::vector<std::string>& values) {
  ModelHandle model;
  if (qfdt_status st = qfdt_model_open(model_path.c_str(), &model.ptr); st != QFDT_OK)
    return fail(st);

  json row = json::object();
  for (const std::string& kv : values) {
    auto eq = kv.find('=');
    std::string number = eq == std::string::npos ? "" : kv.substr(eq + 1);
    double parsed = 0.0;
    auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), parsed);
    if (eq == std::string::npos || eq == 0 || ec != std::errc() ||
        ptr != number.data() + number.size()) {
      std::cerr << "qfdt: --value expects name=number, got '" << kv << "'\n";
      return static_cast<int>(QFDT_ERR_CONFIG);
    }
    row[kv.substr(0, eq)] = parsed;
  }

  DatasetHandle context;
  bool has_context = !o.builtin.empty() || !o.data_path.empty();
  if (has_context)
    if (qfdt_status st = open_dataset(o, context); st != QFDT_OK) return fail(st);

  OwnedString label;
  if (qfdt_status st = qfdt_model_predict(
          model.ptr, has_context ? context.ptr : nullptr,
          has_context ? make_config(o, false).c_str() : nullptr,
          row.dump().c_str(), &label.ptr);
      st != QFDT_OK)
    return fail(st);
  std::cout << label.str() << '\n';
  return 0;
}

int run_bench(const CommonOpts& o, const std::string& datasets,
              const std::string& criteria, const std::string& format,
              const std::string& out_path) {
  ordered_json config;
  auto split_list = [](const std::string& csv) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
      std::size_t comma = csv.find(',', start);
      if (comma == std::string::npos) comma = csv.size();
      if (comma > start) out.push_back(csv.substr(start, comma - start));
      start = comma + 1;
    }
    return out;
  };
  config["datasets"] = split_list(datasets);
  config["criteria"] = split_list(criteria);
  config["mode"] = o.mode;
  config["bins"] = o.bins;
  config["strategy"] = o.strategy;
  config["train_fraction"] = o.train_fraction.value_or(0.9);
  config["seed"] = o.seed;
  if (o.max_depth) config["max_depth"] = *o.max_depth;
  config["format"] = format;
  if (!o.data_dir.empty()) config["data_dir"] = o.data_dir;

  OwnedString document;
  if (qfdt_status st = qfdt_benchmark(config.dump().c_str(), &document.ptr);
      st != QFDT_OK)
    return fail(st);
  return write_output(document.str(), out_path);
}

int run_inspect(const std::string& model_path) {
  ModelHandle model;
  if (qfdt_status st = qfdt_model_open(model_path.c_str(), &model.ptr); st != QFDT_OK)
    return fail(st);
  OwnedString text;
  if (qfdt_status st = qfdt_model_render(model.ptr, &text.ptr); st != QFDT_OK)
    return fail(st);
  std::cout << text.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum-fidelity decision trees"};
  app.require_subcommand(1);
  app.set_version_flag("--version", []() { return std::string(qfdt_version()); });

  CommonOpts train_opts, eval_opts, predict_opts, bench_opts;
  std::string model_out = "model.json";
  std::string model_path;
  std::string format = "csv";
  std::string out_path;
  std::vector<std::string> predict_values;
  std::string bench_datasets = "all";
  std::string bench_criteria = "all";

  CLI::App* train = app.add_subcommand("train", "fit a tree and write the model JSON");
  add_data_flags(train, train_opts);
  train->add_option("--criterion", train_opts.criterion, "fidelity, qig, cig, or gini")
      ->capture_default_str();
  train->add_option("--mode", train_opts.mode, "joint or conditional")
      ->capture_default_str();
  add_pipeline_flags(train, train_opts, /*default_fraction=*/false);
  train->add_option("--max-depth", train_opts.max_depth, "cap tree depth");
  train->add_option("--out", model_out, "model output path")->capture_default_str();

  CLI::App* eval = app.add_subcommand("eval", "score a model on the held-out split");
  eval->add_option("--model", model_path, "model JSON path")->required();
  add_data_flags(eval, eval_opts);
  add_pipeline_flags(eval, eval_opts, /*default_fraction=*/true);
  eval->add_option("--positive", eval_opts.positive, "positive class label");
  eval->add_option("--format", format, "json, csv, or markdown")->capture_default_str();
  eval->add_option("--out", out_path, "write the report here instead of stdout");

  CLI::App* predict = app.add_subcommand("predict", "classify one row given via flags");
  predict->add_option("--model", model_path, "model JSON path")->required();
  predict->add_option("--value", predict_values, "feature value as name=number")
      ->take_all();
  add_data_flags(predict, predict_opts);
  add_pipeline_flags(predict, predict_opts, /*default_fraction=*/false);

  CLI::App* bench = app.add_subcommand("bench", "run the dataset x criterion matrix");
  bench->add_option("--dataset", bench_datasets, "all or comma-separated builtin names")
      ->capture_default_str();
  bench->add_option("--criteria", bench_criteria, "all or comma-separated criteria")
      ->capture_default_str();
  bench->add_option("--mode", bench_opts.mode, "joint or conditional")
      ->capture_default_str();
  add_pipeline_flags(bench, bench_opts, /*default_fraction=*/true);
  bench->add_option("--max-depth", bench_opts.max_depth, "cap tree depth");
  bench->add_option("--format", format, "json, csv, or markdown")->capture_default_str();
  bench->add_option("--out", out_path, "write the document here instead of stdout");
  bench->add_option("--data-dir", bench_opts.data_dir, "directory with the data files");

  CLI::App* inspect = app.add_subcommand("inspect", "render a model as text");
  inspect->add_option("--model", model_path, "model JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(QFDT_ERR_CONFIG);
  }

  if (train->parsed()) return run_train(train_opts, model_out);
  if (eval->parsed()) return run_eval(eval_opts, model_path, format, out_path);
  if (predict->parsed()) return run_predict(predict_opts, model_path, predict_values);
  if (bench->parsed())
    return run_bench(bench_opts, bench_datasets, bench_criteria, format, out_path);
  if (inspect->parsed()) return run_inspect(model_path);
  return static_cast<int>(QFDT_ERR_CONFIG);
}
