// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "oracles.hpp"
#include "qfdt/embedding.hpp"

using namespace qfdt;

namespace {

ContingencyTable table_for(const Dataset& d, std::size_t feature) {
  return build_contingency(d.feature_column(feature), d.labels());
}

}  // namespace

TEST_CASE("build_contingency on the worked columns") {
  Dataset d = testutil::table1();

  ContingencyTable x3 = table_for(d, 2);
  CHECK(x3.feature_values == std::vector<double>{0, 1});
  CHECK(x3.class_labels == std::vector<std::string>{"0", "1"});
  CHECK(x3.counts == std::vector<std::int64_t>{1, 0, 1, 2});

  ContingencyTable x1 = table_for(d, 0);
  CHECK(x1.counts == std::vector<std::int64_t>{1, 1, 1, 1});
  ContingencyTable x2 = table_for(d, 1);
  CHECK(x2.counts == std::vector<std::int64_t>{1, 1, 1, 1});
}

TEST_CASE("build_contingency: single row and mismatched lengths") {
  std::vector<double> col = {5};
  std::vector<std::string> labels = {"1"};
  ContingencyTable t = build_contingency(col, labels);
  CHECK(t.num_values() == 1);
  CHECK(t.num_labels() == 1);
  CHECK(t.counts == std::vector<std::int64_t>{1});

  std::vector<std::string> too_many = {"1", "0"};
  CHECK_THROWS_AS(build_contingency(col, too_many), Error);
}

TEST_CASE("embed_state reproduces the worked amplitude vectors") {
  Dataset d = testutil::table1();

  AmplitudeState x1 = embed_state(table_for(d, 0), AmplitudeMode::Joint);
  for (double a : x1.amplitudes) CHECK(a == doctest::Approx(0.5).epsilon(1e-12));

  AmplitudeState x3 = embed_state(table_for(d, 2), AmplitudeMode::Joint);
  double s6 = std::sqrt(6.0);
  CHECK(std::abs(x3.at(0, 0) - 1 / s6) < 1e-12);
  CHECK(std::abs(x3.at(0, 1) - 0.0) < 1e-12);
  CHECK(std::abs(x3.at(1, 0) - 1 / s6) < 1e-12);
  CHECK(std::abs(x3.at(1, 1) - 2 / s6) < 1e-12);
}

TEST_CASE("embed_state conditional mode normalizes per-value distributions") {
  Dataset d = testutil::table1();
  AmplitudeState x3 = embed_state(table_for(d, 2), AmplitudeMode::Conditional);
  // rows (1,0) and (1/3,2/3) scale to (3,0,1,2)/sqrt(14)
  double s14 = std::sqrt(14.0);
  CHECK(std::abs(x3.at(0, 0) - 3 / s14) < 1e-12);
  CHECK(std::abs(x3.at(0, 1) - 0.0) < 1e-12);
  CHECK(std::abs(x3.at(1, 0) - 1 / s14) < 1e-12);
  CHECK(std::abs(x3.at(1, 1) - 2 / s14) < 1e-12);
}

TEST_CASE("embed_state rejects all-zero tables") {
  ContingencyTable t;
  t.feature_values = {0, 1};
  t.class_labels = {"a"};
  t.counts = {0, 0};
  CHECK_THROWS_AS(embed_state(t, AmplitudeMode::Joint), Error);
}

TEST_CASE("joint_density is the unit-trace projector") {
  AmplitudeState basis{2, 2, {1, 0, 0, 0}};
  DensityOperator rho = joint_density(basis);
  CHECK(rho.at(0, 0) == 1.0);
  CHECK(rho.at(1, 1) == 0.0);
  CHECK(rho.at(3, 3) == 0.0);

  double s6 = std::sqrt(6.0);
  AmplitudeState x3{2, 2, {1 / s6, 0, 1 / s6, 2 / s6}};
  DensityOperator rho3 = joint_density(x3);
  CHECK(rho3.at(3, 3) == doctest::Approx(4.0 / 6).epsilon(1e-12));
  CHECK(rho3.matrix().trace() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reduced_pair against the brute-force oracle") {
  Dataset d = testutil::table1();
  auto [rx, ry] = reduced_pair(embed_state(table_for(d, 2), AmplitudeMode::Joint));

  double s6 = std::sqrt(6.0);
  std::vector<double> psi = {1 / s6, 0, 1 / s6, 2 / s6};
  auto ex = oracle::ptrace_keep_x(oracle::outer(psi), 2, 2);
  auto ey = oracle::ptrace_keep_y(oracle::outer(psi), 2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(std::abs(rx.at(i, j) - ex[i * 2 + j]) < 1e-12);
      CHECK(std::abs(ry.at(i, j) - ey[i * 2 + j]) < 1e-12);
    }
  CHECK(rx.matrix().trace() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ry.matrix().trace() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reduced_pair of a product state gives matching factors") {
  AmplitudeState flat{2, 2, {0.5, 0.5, 0.5, 0.5}};
  auto [rx, ry] = reduced_pair(flat);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(rx.at(i, j) == doctest::Approx(0.5).epsilon(1e-12));
      CHECK(ry.at(i, j) == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("reduced_pair zero-pads unequal subsystem dimensions") {
  // dX=3, dY=2 basis state |X0 Y0>
  AmplitudeState s{3, 2, {1, 0, 0, 0, 0, 0}};
  auto [rx, ry] = reduced_pair(s);
  CHECK(rx.dim() == 3);
  CHECK(ry.dim() == 3);
  CHECK(ry.at(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ry.at(1, 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ry.at(2, 2) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ry.matrix().trace() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("joint and conditional modes coincide on equal value marginals") {
  Dataset d = testutil::table1();
  AmplitudeState joint = embed_state(table_for(d, 0), AmplitudeMode::Joint);
  AmplitudeState cond = embed_state(table_for(d, 0), AmplitudeMode::Conditional);
  for (std::size_t i = 0; i < joint.amplitudes.size(); ++i)
    CHECK(std::abs(joint.amplitudes[i] - cond.amplitudes[i]) < 1e-12);

  // random tables with equal row sums
  oracle::Rng rng(11);
  for (int c = 0; c < 100; ++c) {
    std::size_t k = 2 + rng.index(3), m = 2 + rng.index(3);
    std::int64_t row_sum = 4 + static_cast<std::int64_t>(rng.index(5));
    ContingencyTable t;
    for (std::size_t i = 0; i < k; ++i) t.feature_values.push_back(static_cast<double>(i));
    for (std::size_t j = 0; j < m; ++j) t.class_labels.push_back(std::string(1, 'a' + static_cast<char>(j)));
    t.counts.assign(k * m, 0);
    for (std::size_t i = 0; i < k; ++i) {
      std::int64_t left = row_sum;
      for (std::size_t j = 0; j + 1 < m; ++j) {
        std::int64_t take = static_cast<std::int64_t>(rng.index(static_cast<std::size_t>(left + 1)));
        t.counts[i * m + j] = take;
        left -= take;
      }
      t.counts[i * m + m - 1] = left;
    }
    AmplitudeState a = embed_state(t, AmplitudeMode::Joint);
    AmplitudeState b = embed_state(t, AmplitudeMode::Conditional);
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
      CHECK(std::abs(a.amplitudes[i] - b.amplitudes[i]) < 1e-12);
  }
}

TEST_CASE("embedded states are unit-norm and nonnegative") {
  oracle::Rng rng(23);
  for (int c = 0; c < 100; ++c) {
    std::size_t k = 1 + rng.index(4), m = 1 + rng.index(4);
    ContingencyTable t;
    for (std::size_t i = 0; i < k; ++i) t.feature_values.push_back(static_cast<double>(i));
    for (std::size_t j = 0; j < m; ++j) t.class_labels.push_back(std::string(1, 'a' + static_cast<char>(j)));
    t.counts.assign(k * m, 0);
    bool any = false;
    for (auto& n : t.counts) {
      n = static_cast<std::int64_t>(rng.index(6));
      any = any || n > 0;
    }
    if (!any) t.counts[0] = 1;
    for (AmplitudeMode mode : {AmplitudeMode::Joint, AmplitudeMode::Conditional}) {
      AmplitudeState s = embed_state(t, mode);
      double norm2 = 0.0;
      for (double a : s.amplitudes) {
        CHECK(a >= 0.0);
        norm2 += a * a;
      }
      CHECK(std::abs(norm2 - 1.0) < 1e-12);
    }
  }
}
