// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "qfdt/dataset.hpp"

namespace testutil {

// The worked 4-row binary example: features X1, X2, X3 and label Y.
//   (1,1,1)->1  (0,1,0)->0  (1,0,1)->0  (0,0,1)->1
inline qfdt::Dataset table1() {
  qfdt::Dataset d;
  d.schema.feature_names = {"X1", "X2", "X3"};
  d.schema.feature_kinds.assign(3, qfdt::FeatureKind::Categorical);
  d.schema.label_name = "Y";
  d.rows = {{{1, 1, 1}, "1"}, {{0, 1, 0}, "0"}, {{1, 0, 1}, "0"}, {{0, 0, 1}, "1"}};
  d.provenance = "toy worked example";
  return d;
}

inline const char* table1_csv() {
  return "X1,X2,X3,Y\n"
         "1,1,1,1\n"
         "0,1,0,0\n"
         "1,0,1,0\n"
         "0,0,1,1\n";
}

// Scratch directory for files a test writes; unique per test binary run.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    dir_ = std::filesystem::temp_directory_path() /
           ("qfdt_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }

  std::string write(const std::string& name, const std::string& contents) const {
    std::filesystem::path p = dir_ / name;
    std::ofstream out(p, std::ios::binary);
    out << contents;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  std::filesystem::path dir_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::string out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return out;
}

}  // namespace testutil
