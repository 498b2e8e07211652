// SPDX-License-Identifier: Apache-2.0
//
// Attribute-selection scores: quantum fidelity, von Neumann mutual
// information (QIG), classical information gain, and Gini impurity, plus the
// deterministic argmax/argmin that replaces the search step.
#pragma once

#include <string>
#include <vector>

#include "qfdt/embedding.hpp"

namespace qfdt {

/// Fidelity, QIG, and CIG are maximized; Gini (child impurity) is minimized.
enum class CriterionKind { Fidelity, Qig, Cig, Gini };

enum class ScoreDirection { Maximize, Minimize };

struct FeatureScore {
  int feature_index = -1;
  double score = 0.0;
  ScoreDirection direction = ScoreDirection::Maximize;
};

ScoreDirection criterion_direction(CriterionKind kind) noexcept;
const char* criterion_name(CriterionKind kind) noexcept;
CriterionKind parse_criterion(const std::string& name);

/// Uhlmann fidelity between the reduced feature and class operators of the
/// embedded state. Callers exclude constant features (k == 1) upstream.
double score_fidelity(const ContingencyTable& table, AmplitudeMode mode);

/// Von Neumann mutual information S(rho_X) + S(rho_Y) - S(rho_XY) in bits;
/// the constructed joint state is pure, so this equals twice the
/// entanglement entropy.
double score_qig(const ContingencyTable& table, AmplitudeMode mode);

/// Shannon information gain H(Y) - sum_i (n_i/N) H(Y|X=i), base 2.
double score_cig(const ContingencyTable& table);

/// Weighted child impurity sum_i (n_i/N) (1 - sum_j p(j|i)^2); lower wins.
double score_gini(const ContingencyTable& table);

double score(const ContingencyTable& table, CriterionKind kind, AmplitudeMode mode);

/// Index of the best score (max or min per the scores' direction); ties go
/// to the lowest feature index.
int select_best(const std::vector<FeatureScore>& scores);

}  // namespace qfdt
