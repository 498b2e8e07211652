// SPDX-License-Identifier: Apache-2.0
#include "qfdt/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "qfdt/format.hpp"

namespace qfdt {

using ordered_json = nlohmann::ordered_json;

std::vector<double> Dataset::feature_column(std::size_t f) const {
  std::vector<double> col;
  col.reserve(rows.size());
  for (const Row& r : rows) col.push_back(r.values[f]);
  return col;
}

std::vector<std::string> Dataset::labels() const {
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (const Row& r : rows) out.push_back(r.label);
  return out;
}

std::map<std::string, std::size_t> Dataset::label_counts() const {
  std::map<std::string, std::size_t> counts;
  for (const Row& r : rows) ++counts[r.label];
  return counts;
}

namespace {

std::vector<std::string> split_fields(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  if (delimiter == '\0') {
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) fields.push_back(tok);
    return fields;
  }
  std::string cur;
  for (char c : line) {
    if (c == delimiter) {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

struct RawLine {
  std::size_t line_no;  // 1-based in the file
  std::vector<std::string> fields;
};

}  // namespace

Dataset load_csv(const std::string& path, const DatasetSchema& schema,
                 const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot open '" + path + "'");

  std::vector<RawLine> lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    lines.push_back({line_no, split_fields(line, options.delimiter)});
  }
  if (lines.empty()) raise(ErrorCode::EmptyDataset, "'" + path + "' has no data rows");

  const std::size_t raw_width = lines.front().fields.size();
  std::vector<bool> dropped(raw_width, false);
  for (int c : options.drop_columns) {
    if (c < 0 || static_cast<std::size_t>(c) >= raw_width)
      raise(ErrorCode::InvalidArgument, "drop_columns index out of range");
    dropped[static_cast<std::size_t>(c)] = true;
  }
  std::size_t label_col = options.label_column < 0
                              ? raw_width - 1
                              : static_cast<std::size_t>(options.label_column);
  if (label_col >= raw_width || dropped[label_col])
    raise(ErrorCode::InvalidArgument, "label column out of range");

  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < raw_width; ++c)
    if (c != label_col && !dropped[c]) feature_cols.push_back(c);

  // Header handling: an explicit mode wins; Auto treats the first line as a
  // header when any feature cell is neither numeric nor the missing marker.
  std::size_t first_data = 0;
  if (options.header == HeaderMode::Yes) {
    first_data = 1;
  } else if (options.header == HeaderMode::Auto) {
    double ignored;
    for (std::size_t c : feature_cols) {
      const std::string cell = trim(lines.front().fields[c]);
      if (cell != "?" && !parse_double(cell, ignored)) {
        first_data = 1;
        break;
      }
    }
  }
  if (first_data >= lines.size())
    raise(ErrorCode::EmptyDataset, "'" + path + "' has no data rows after the header");

  Dataset d;
  d.schema = schema;
  if (d.schema.feature_names.empty()) {
    if (first_data == 1 && lines.front().fields.size() == raw_width) {
      for (std::size_t c : feature_cols)
        d.schema.feature_names.push_back(trim(lines.front().fields[c]));
      d.schema.label_name = trim(lines.front().fields[label_col]);
    } else {
      for (std::size_t i = 0; i < feature_cols.size(); ++i)
        d.schema.feature_names.push_back("f" + std::to_string(i));
    }
    d.schema.feature_kinds.assign(feature_cols.size(), FeatureKind::Continuous);
  }
  if (d.schema.feature_names.size() != feature_cols.size())
    raise(ErrorCode::ParseError, "'" + path + "': schema expects " +
                                     std::to_string(d.schema.feature_names.size()) +
                                     " features, file provides " +
                                     std::to_string(feature_cols.size()));

  for (std::size_t li = first_data; li < lines.size(); ++li) {
    const RawLine& raw = lines[li];
    if (raw.fields.size() != raw_width)
      raise(ErrorCode::ParseError, "'" + path + "' line " + std::to_string(raw.line_no) +
                                       ": expected " + std::to_string(raw_width) +
                                       " fields, found " + std::to_string(raw.fields.size()));
    ++d.stats.rows_read;

    std::string label = trim(raw.fields[label_col]);
    ++d.stats.label_counts_pre_drop[label];

    bool missing = false;
    Row row;
    row.values.reserve(feature_cols.size());
    for (std::size_t c : feature_cols) {
      const std::string cell = trim(raw.fields[c]);
      if (cell == "?") {
        missing = true;
        continue;
      }
      double v;
      if (!parse_double(cell, v))
        raise(ErrorCode::ParseError, "'" + path + "' line " + std::to_string(raw.line_no) +
                                         ": cannot parse value '" + cell + "'");
      row.values.push_back(v);
    }
    if (missing) {
      if (options.missing == MissingPolicy::Error)
        raise(ErrorCode::ParseError, "'" + path + "' line " +
                                         std::to_string(raw.line_no) +
                                         ": missing value marker '?'");
      ++d.stats.rows_dropped_missing;
      continue;
    }

    if (!options.allowed_labels.empty() &&
        std::find(options.allowed_labels.begin(), options.allowed_labels.end(), label) ==
            options.allowed_labels.end())
      raise(ErrorCode::UnknownLabel, "'" + path + "' line " + std::to_string(raw.line_no) +
                                         ": unknown label '" + label + "'");
    if (!options.keep_labels.empty() &&
        std::find(options.keep_labels.begin(), options.keep_labels.end(), label) ==
            options.keep_labels.end()) {
      ++d.stats.rows_filtered_label;
      continue;
    }

    auto renamed = options.label_names.find(label);
    row.label = renamed == options.label_names.end() ? label : renamed->second;
    d.rows.push_back(std::move(row));
  }

  if (d.rows.empty()) raise(ErrorCode::EmptyDataset, "'" + path + "': no usable rows");
  d.provenance = path + ": kept " + std::to_string(d.rows.size()) + " of " +
                 std::to_string(d.stats.rows_read) + " rows";
  return d;
}

namespace {

std::string resolve_data_file(const std::string& file, const std::string& data_dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> candidates;
  if (!data_dir.empty()) candidates.push_back(data_dir);
  if (const char* env = std::getenv("QFDT_DATA_DIR"); env && *env)
    candidates.push_back(env);
  candidates.push_back("data");
  for (const std::string& dir : candidates) {
    fs::path p = fs::path(dir) / file;
    if (fs::exists(p)) return p.string();
  }
  raise(ErrorCode::IoError,
        "dataset file '" + file + "' not found (searched --data-dir, $QFDT_DATA_DIR, "
        "./data); run scripts/fetch_datasets.sh or scripts/make_synthetic_data.py");
}

}  // namespace

BuiltinDataset prepare_builtin(const std::string& name, const std::string& data_dir) {
  if (name == "haberman") {
    DatasetSchema schema;
    schema.feature_names = {"age", "operation_year", "axillary_nodes"};
    schema.feature_kinds.assign(3, FeatureKind::Continuous);
    schema.label_name = "survival";
    CsvOptions opt;
    opt.allowed_labels = {"1", "2"};
    opt.label_names = {{"1", "survived"}, {"2", "died"}};
    Dataset d = load_csv(resolve_data_file("haberman.data", data_dir), schema, opt);
    return {std::move(d), "died"};
  }
  if (name == "wisconsin") {
    DatasetSchema schema;
    schema.feature_names = {"clump_thickness", "cell_size_uniformity",
                            "cell_shape_uniformity", "marginal_adhesion",
                            "single_epithelial_cell_size", "bare_nuclei",
                            "bland_chromatin", "normal_nucleoli", "mitoses"};
    schema.feature_kinds.assign(9, FeatureKind::Continuous);
    schema.label_name = "diagnosis";
    CsvOptions opt;
    opt.drop_columns = {0};  // sample id
    opt.allowed_labels = {"2", "4"};
    opt.label_names = {{"2", "benign"}, {"4", "malignant"}};
    Dataset d = load_csv(resolve_data_file("breast-cancer-wisconsin.data", data_dir),
                         schema, opt);
    return {std::move(d), "malignant"};
  }
  if (name == "seeds") {
    DatasetSchema schema;
    schema.feature_names = {"area",         "perimeter",    "compactness",
                            "kernel_length", "kernel_width", "asymmetry",
                            "groove_length"};
    schema.feature_kinds.assign(7, FeatureKind::Continuous);
    schema.label_name = "variety";
    CsvOptions opt;
    opt.delimiter = '\0';  // whitespace-delimited file
    opt.allowed_labels = {"1", "2", "3"};
    opt.keep_labels = {"1", "3"};  // Kama and Canadian
    opt.label_names = {{"1", "Kama"}, {"3", "Canadian"}};
    Dataset d = load_csv(resolve_data_file("seeds_dataset.txt", data_dir), schema, opt);
    return {std::move(d), "Canadian"};
  }
  raise(ErrorCode::UnknownDataset, "unknown built-in dataset '" + name +
                                       "' (expected haberman, wisconsin, or seeds)");
}

Discretizer Discretizer::fit(const Dataset& d, int bins, BinStrategy strategy) {
  if (bins < 2) raise(ErrorCode::InvalidArgument, "bins must be >= 2");
  if (d.rows.empty()) raise(ErrorCode::EmptyDataset, "cannot fit bins on an empty dataset");

  Discretizer disc;
  disc.bins_ = bins;
  disc.strategy_ = strategy;
  disc.feature_names_ = d.schema.feature_names;
  disc.kinds_ = d.schema.feature_kinds;
  disc.edges_.resize(d.num_features());
  disc.constant_.resize(d.num_features());

  for (std::size_t f = 0; f < d.num_features(); ++f) {
    std::vector<double> col = d.feature_column(f);
    std::sort(col.begin(), col.end());
    bool constant = col.front() == col.back();
    disc.constant_[f] = constant;
    if (d.schema.feature_kinds[f] != FeatureKind::Continuous || constant) continue;

    std::vector<double> edges;
    const std::size_t n = col.size();
    if (strategy == BinStrategy::EqualFrequency) {
      for (int k = 1; k < bins; ++k) {
        double e = col[n * static_cast<std::size_t>(k) / static_cast<std::size_t>(bins)];
        if (e <= col.front()) {
          // quantile landed on the minimum; cut above it instead so the low
          // bin is nonempty
          auto it = std::upper_bound(col.begin(), col.end(), col.front());
          e = *it;
        }
        edges.push_back(e);
      }
    } else {
      double lo = col.front(), hi = col.back();
      for (int k = 1; k < bins; ++k)
        edges.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(bins));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    disc.edges_[f] = std::move(edges);
  }
  return disc;
}

std::vector<double> Discretizer::apply_row(const std::vector<double>& values) const {
  if (values.size() != edges_.size())
    raise(ErrorCode::LengthMismatch, "row arity does not match fitted discretizer");
  std::vector<double> out(values.size());
  for (std::size_t f = 0; f < values.size(); ++f) {
    if (kinds_[f] != FeatureKind::Continuous || constant_[f]) {
      out[f] = (kinds_[f] == FeatureKind::Continuous && constant_[f]) ? 0.0 : values[f];
      continue;
    }
    // values on an edge fall into the bin above it
    std::size_t bin = 0;
    for (double edge : edges_[f])
      if (values[f] >= edge) ++bin;
    out[f] = static_cast<double>(bin);
  }
  return out;
}

Dataset Discretizer::apply(const Dataset& d) const {
  Dataset out;
  out.schema = d.schema;
  out.schema.feature_kinds.assign(d.num_features(), FeatureKind::Categorical);
  out.provenance = d.provenance;
  out.stats = d.stats;
  out.rows.reserve(d.rows.size());
  for (const Row& r : d.rows) out.rows.push_back({apply_row(r.values), r.label});
  return out;
}

std::string Discretizer::to_json() const {
  ordered_json j;
  j["bins"] = bins_;
  j["strategy"] = bin_strategy_name(strategy_);
  j["features"] = ordered_json::array();
  for (std::size_t f = 0; f < feature_names_.size(); ++f) {
    ordered_json fj;
    fj["name"] = feature_names_[f];
    fj["kind"] = kinds_[f] == FeatureKind::Continuous ? "continuous" : "categorical";
    fj["constant"] = static_cast<bool>(constant_[f]);
    fj["edges"] = edges_[f];
    j["features"].push_back(std::move(fj));
  }
  return j.dump(2) + "\n";
}

Discretizer Discretizer::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object() || !j.contains("features"))
    raise(ErrorCode::ParseError, "malformed discretizer sidecar");
  Discretizer disc;
  disc.bins_ = j.value("bins", 2);
  disc.strategy_ = parse_bin_strategy(j.value("strategy", "equal_frequency"));
  for (const auto& fj : j["features"]) {
    disc.feature_names_.push_back(fj.at("name").get<std::string>());
    disc.kinds_.push_back(fj.at("kind").get<std::string>() == "continuous"
                              ? FeatureKind::Continuous
                              : FeatureKind::Categorical);
    disc.constant_.push_back(fj.at("constant").get<bool>());
    disc.edges_.push_back(fj.at("edges").get<std::vector<double>>());
  }
  return disc;
}

std::pair<Dataset, Discretizer> discretize(const Dataset& d, int bins,
                                           BinStrategy strategy) {
  Discretizer disc = Discretizer::fit(d, bins, strategy);
  return {disc.apply(d), std::move(disc)};
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& d, double train_fraction,
                                             std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    raise(ErrorCode::InvalidArgument, "train fraction must be in (0, 1)");
  const std::size_t n = d.num_rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Lcg64 rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::size_t j = static_cast<std::size_t>(rng.bounded(i + 1));
    std::swap(order[i], order[j]);
  }
  std::size_t n_train = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * train_fraction));
  if (n_train == 0 || n_train == n)
    raise(ErrorCode::DegenerateSplit, "split would leave an empty partition (n=" +
                                          std::to_string(n) + ")");

  Dataset train, test;
  train.schema = test.schema = d.schema;
  train.provenance = d.provenance + " [train]";
  test.provenance = d.provenance + " [test]";
  train.rows.reserve(n_train);
  test.rows.reserve(n - n_train);
  for (std::size_t i = 0; i < n; ++i)
    (i < n_train ? train : test).rows.push_back(d.rows[order[i]]);
  return {std::move(train), std::move(test)};
}

void save_prepared(const Dataset& d, const Discretizer& disc, const std::string& csv_path) {
  std::ofstream out(csv_path, std::ios::binary);
  if (!out) raise(ErrorCode::IoError, "cannot write '" + csv_path + "'");
  for (std::size_t f = 0; f < d.num_features(); ++f)
    out << d.schema.feature_names[f] << ',';
  out << d.schema.label_name << '\n';
  for (const Row& r : d.rows) {
    for (double v : r.values) out << format_value(v) << ',';
    out << r.label << '\n';
  }
  std::ofstream side(csv_path + ".bins.json", std::ios::binary);
  if (!side) raise(ErrorCode::IoError, "cannot write '" + csv_path + ".bins.json'");
  side << disc.to_json();
}

std::pair<Dataset, Discretizer> load_prepared(const std::string& csv_path) {
  std::ifstream side(csv_path + ".bins.json");
  if (!side) raise(ErrorCode::IoError, "cannot open '" + csv_path + ".bins.json'");
  std::stringstream buf;
  buf << side.rdbuf();
  Discretizer disc = Discretizer::from_json(buf.str());

  CsvOptions opt;
  opt.header = HeaderMode::Yes;
  Dataset d = load_csv(csv_path, DatasetSchema{}, opt);
  // Prepared rows are already bin indexes.
  d.schema.feature_kinds.assign(d.num_features(), FeatureKind::Categorical);
  return {std::move(d), std::move(disc)};
}

const char* bin_strategy_name(BinStrategy s) noexcept {
  return s == BinStrategy::EqualFrequency ? "equal_frequency" : "equal_width";
}

BinStrategy parse_bin_strategy(const std::string& name) {
  if (name == "equal_frequency") return BinStrategy::EqualFrequency;
  if (name == "equal_width") return BinStrategy::EqualWidth;
  raise(ErrorCode::InvalidArgument, "unknown bin strategy '" + name + "'");
}

}  // namespace qfdt
