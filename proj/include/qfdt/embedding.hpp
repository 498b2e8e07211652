// SPDX-License-Identifier: Apache-2.0
//
// Converts per-feature occurrence statistics into amplitude-embedded states
// and their joint/reduced density operators.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qfdt/linalg.hpp"

namespace qfdt {

/// Joint event counts n(feature-value i, class j) with deterministic
/// orderings: feature values ascending, class labels ascending.
struct ContingencyTable {
  std::vector<double> feature_values;   // size k
  std::vector<std::string> class_labels;  // size m
  std::vector<std::int64_t> counts;     // k*m, row-major (value-major)

  std::size_t num_values() const noexcept { return feature_values.size(); }
  std::size_t num_labels() const noexcept { return class_labels.size(); }
  std::int64_t count(std::size_t i, std::size_t j) const {
    return counts[i * num_labels() + j];
  }
  std::int64_t total() const noexcept;
  std::int64_t row_total(std::size_t i) const;
};

/// How count statistics become amplitudes: Joint uses the raw joint counts
/// n(i,j); Conditional uses the per-value class distribution n(i,j)/n(i).
/// Both are L2-normalized afterwards.
enum class AmplitudeMode { Joint, Conditional };

/// Unit-norm nonnegative amplitude vector over the |X_i Y_j> basis,
/// row-major with j fastest-varying.
struct AmplitudeState {
  std::size_t dim_x = 0;
  std::size_t dim_y = 0;
  std::vector<double> amplitudes;  // dim_x * dim_y

  double at(std::size_t i, std::size_t j) const { return amplitudes[i * dim_y + j]; }
};

ContingencyTable build_contingency(std::span<const double> feature_column,
                                   std::span<const std::string> label_column);

AmplitudeState embed_state(const ContingencyTable& table, AmplitudeMode mode);

/// Rank-1 projector |psi><psi| over the joint basis.
DensityOperator joint_density(const AmplitudeState& state);

/// Reduced operators (rho_X, rho_Y); when dim_x != dim_y the smaller one is
/// zero-padded to max(dim_x, dim_y) so fidelity is defined on the pair.
std::pair<DensityOperator, DensityOperator> reduced_pair(const AmplitudeState& state);

const char* amplitude_mode_name(AmplitudeMode mode) noexcept;
AmplitudeMode parse_amplitude_mode(const std::string& name);

}  // namespace qfdt
