// SPDX-License-Identifier: Apache-2.0
#include "qfdt/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace qfdt {

std::int64_t ContingencyTable::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

std::int64_t ContingencyTable::row_total(std::size_t i) const {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < num_labels(); ++j) s += count(i, j);
  return s;
}

ContingencyTable build_contingency(std::span<const double> feature_column,
                                   std::span<const std::string> label_column) {
  if (feature_column.size() != label_column.size())
    raise(ErrorCode::LengthMismatch,
          "feature column has " + std::to_string(feature_column.size()) +
              " rows, label column has " + std::to_string(label_column.size()));
  if (feature_column.empty())
    raise(ErrorCode::LengthMismatch, "contingency over empty columns");

  std::map<double, std::size_t> value_index;
  std::map<std::string, std::size_t> label_index;
  for (double v : feature_column) value_index.emplace(v, 0);
  for (const auto& l : label_column) label_index.emplace(l, 0);

  ContingencyTable t;
  for (auto& [v, idx] : value_index) {
    idx = t.feature_values.size();
    t.feature_values.push_back(v);
  }
  for (auto& [l, idx] : label_index) {
    idx = t.class_labels.size();
    t.class_labels.push_back(l);
  }
  t.counts.assign(t.num_values() * t.num_labels(), 0);
  for (std::size_t r = 0; r < feature_column.size(); ++r)
    ++t.counts[value_index[feature_column[r]] * t.num_labels() +
               label_index[label_column[r]]];
  return t;
}

AmplitudeState embed_state(const ContingencyTable& table, AmplitudeMode mode) {
  const std::size_t k = table.num_values();
  const std::size_t m = table.num_labels();
  AmplitudeState s;
  s.dim_x = k;
  s.dim_y = m;
  s.amplitudes.assign(k * m, 0.0);

  for (std::size_t i = 0; i < k; ++i) {
    std::int64_t row = table.row_total(i);
    for (std::size_t j = 0; j < m; ++j) {
      double n = static_cast<double>(table.count(i, j));
      s.amplitudes[i * m + j] =
          (mode == AmplitudeMode::Joint) ? n : (row > 0 ? n / static_cast<double>(row) : 0.0);
    }
  }

  double norm2 = 0.0;
  for (double a : s.amplitudes) norm2 += a * a;
  if (norm2 <= 0.0)
    raise(ErrorCode::AllZeroCounts, "cannot embed a table whose counts are all zero");
  double inv = 1.0 / std::sqrt(norm2);
  for (double& a : s.amplitudes) a *= inv;
  return s;
}

DensityOperator joint_density(const AmplitudeState& state) {
  const std::size_t d = state.amplitudes.size();
  std::vector<double> rho(d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      rho[a * d + b] = state.amplitudes[a] * state.amplitudes[b];
  return DensityOperator(SymMatrix(d, std::move(rho)));
}

namespace {

DensityOperator zero_pad(const DensityOperator& op, std::size_t dim) {
  if (op.dim() == dim) return op;
  SymMatrix padded(dim);
  for (std::size_t i = 0; i < op.dim(); ++i)
    for (std::size_t j = i; j < op.dim(); ++j) padded.set(i, j, op.at(i, j));
  return DensityOperator(std::move(padded));
}

}  // namespace

std::pair<DensityOperator, DensityOperator> reduced_pair(const AmplitudeState& state) {
  DensityOperator rho = joint_density(state);
  DensityOperator rho_x = partial_trace(rho, state.dim_x, state.dim_y, Subsystem::X);
  DensityOperator rho_y = partial_trace(rho, state.dim_x, state.dim_y, Subsystem::Y);
  std::size_t d = std::max(state.dim_x, state.dim_y);
  return {zero_pad(std::move(rho_x), d), zero_pad(std::move(rho_y), d)};
}

const char* amplitude_mode_name(AmplitudeMode mode) noexcept {
  return mode == AmplitudeMode::Joint ? "joint" : "conditional";
}

AmplitudeMode parse_amplitude_mode(const std::string& name) {
  if (name == "joint") return AmplitudeMode::Joint;
  if (name == "conditional") return AmplitudeMode::Conditional;
  raise(ErrorCode::InvalidArgument, "unknown amplitude mode '" + name + "'");
}

}  // namespace qfdt
