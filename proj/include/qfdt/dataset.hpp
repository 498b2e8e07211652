// SPDX-License-Identifier: Apache-2.0
//
// Dataset ingestion, cleaning, discretization, seeded splitting, and the
// three built-in benchmark dataset preparations.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfdt/error.hpp"

namespace qfdt {

enum class FeatureKind { Categorical, Continuous };

struct DatasetSchema {
  std::vector<std::string> feature_names;
  std::vector<FeatureKind> feature_kinds;
  std::string label_name = "label";
};

struct Row {
  std::vector<double> values;
  std::string label;
};

struct LoadStats {
  std::size_t rows_read = 0;             // data rows parsed, pre-drop/filter
  std::size_t rows_dropped_missing = 0;  // "?" rows removed under MissingPolicy::Drop
  std::size_t rows_filtered_label = 0;   // rows removed by a keep-labels filter
  std::map<std::string, std::size_t> label_counts_pre_drop;
};

struct Dataset {
  DatasetSchema schema;
  std::vector<Row> rows;
  std::string provenance;
  LoadStats stats;

  std::size_t num_rows() const noexcept { return rows.size(); }
  std::size_t num_features() const noexcept { return schema.feature_names.size(); }
  std::vector<double> feature_column(std::size_t f) const;
  std::vector<std::string> labels() const;
  std::map<std::string, std::size_t> label_counts() const;
};

enum class MissingPolicy { Drop, Error };
enum class HeaderMode { Auto, Yes, No };

struct CsvOptions {
  char delimiter = ',';                // '\0' splits on any whitespace run
  HeaderMode header = HeaderMode::Auto;
  MissingPolicy missing = MissingPolicy::Drop;
  int label_column = -1;               // -1 = last column
  std::vector<int> drop_columns;       // raw column indexes to discard (e.g. ids)
  std::vector<std::string> allowed_labels;  // nonempty: anything else raises UnknownLabel
  std::vector<std::string> keep_labels;     // nonempty: silently filter to these
  std::map<std::string, std::string> label_names;  // raw label -> display name
};

/// Parse a delimited text file into typed rows. The missing-value marker is
/// "?"; rows carrying it are dropped (or rejected) per options.missing.
Dataset load_csv(const std::string& path, const DatasetSchema& schema,
                 const CsvOptions& options = {});

struct BuiltinDataset {
  Dataset dataset;
  std::string positive_label;
};

/// "haberman", "wisconsin", or "seeds". Looks for the canonical file in
/// data_dir, then $QFDT_DATA_DIR, then ./data. No network: see
/// scripts/fetch_datasets.sh.
BuiltinDataset prepare_builtin(const std::string& name, const std::string& data_dir = "");

enum class BinStrategy { EqualFrequency, EqualWidth };

/// Bin-edge mapping fitted on one dataset (the training partition) and
/// reusable on others; continuous features become bin indexes 0..bins-1,
/// categorical features pass through unchanged.
class Discretizer {
 public:
  static Discretizer fit(const Dataset& d, int bins, BinStrategy strategy);

  Dataset apply(const Dataset& d) const;
  std::vector<double> apply_row(const std::vector<double>& values) const;

  const std::vector<double>& edges(std::size_t feature) const { return edges_[feature]; }
  bool is_constant(std::size_t feature) const { return constant_[feature]; }
  int bins() const noexcept { return bins_; }
  BinStrategy strategy() const noexcept { return strategy_; }

  std::string to_json() const;
  static Discretizer from_json(const std::string& text);

 private:
  Discretizer() = default;
  int bins_ = 2;
  BinStrategy strategy_ = BinStrategy::EqualFrequency;
  std::vector<std::string> feature_names_;
  std::vector<FeatureKind> kinds_;
  std::vector<std::vector<double>> edges_;  // ascending, deduplicated
  std::vector<bool> constant_;
};

/// fit + apply in one step.
std::pair<Dataset, Discretizer> discretize(const Dataset& d, int bins,
                                           BinStrategy strategy);

/// Deterministic seeded shuffle (64-bit LCG, see Lcg64) followed by a cut at
/// floor(N * train_fraction). Same seed, same split, on every platform.
std::pair<Dataset, Dataset> train_test_split(const Dataset& d, double train_fraction,
                                             std::uint64_t seed);

/// Prepared-data cache: CSV with header plus a ".bins.json" sidecar holding
/// the fitted edges. Byte-deterministic output.
void save_prepared(const Dataset& d, const Discretizer& disc, const std::string& csv_path);
std::pair<Dataset, Discretizer> load_prepared(const std::string& csv_path);

/// Knuth's MMIX linear congruential generator:
///   state <- state * 6364136223846793005 + 1442695040888963407  (mod 2^64)
/// bounded(n) maps the next state onto [0, n) by 128-bit multiply-shift.
/// This is the single source of randomness in the toolkit.
class Lcg64 {
 public:
  explicit Lcg64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }
  std::uint64_t bounded(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

const char* bin_strategy_name(BinStrategy s) noexcept;
BinStrategy parse_bin_strategy(const std::string& name);

}  // namespace qfdt
