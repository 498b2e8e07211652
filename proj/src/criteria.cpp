// SPDX-License-Identifier: Apache-2.0
#include "qfdt/criteria.hpp"

#include <cmath>

namespace qfdt {

ScoreDirection criterion_direction(CriterionKind kind) noexcept {
  return kind == CriterionKind::Gini ? ScoreDirection::Minimize
                                     : ScoreDirection::Maximize;
}

const char* criterion_name(CriterionKind kind) noexcept {
  switch (kind) {
    case CriterionKind::Fidelity: return "fidelity";
    case CriterionKind::Qig: return "qig";
    case CriterionKind::Cig: return "cig";
    case CriterionKind::Gini: return "gini";
  }
  return "?";
}

CriterionKind parse_criterion(const std::string& name) {
  if (name == "fidelity") return CriterionKind::Fidelity;
  if (name == "qig") return CriterionKind::Qig;
  if (name == "cig") return CriterionKind::Cig;
  if (name == "gini") return CriterionKind::Gini;
  raise(ErrorCode::InvalidArgument, "unknown criterion '" + name + "'");
}

double score_fidelity(const ContingencyTable& table, AmplitudeMode mode) {
  auto [rho_x, rho_y] = reduced_pair(embed_state(table, mode));
  return fidelity(rho_x, rho_y);
}

double score_qig(const ContingencyTable& table, AmplitudeMode mode) {
  AmplitudeState state = embed_state(table, mode);
  auto [rho_x, rho_y] = reduced_pair(state);
  double mutual = von_neumann_entropy(rho_x) + von_neumann_entropy(rho_y) -
                  von_neumann_entropy(joint_density(state));
  return mutual < 0.0 ? 0.0 : mutual;
}

namespace {

double shannon_bits(const std::vector<std::int64_t>& counts, std::int64_t total) {
  if (total <= 0) return 0.0;
  double h = 0.0;
  for (std::int64_t c : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

double score_cig(const ContingencyTable& table) {
  const std::size_t k = table.num_values();
  const std::size_t m = table.num_labels();
  const std::int64_t total = table.total();

  std::vector<std::int64_t> class_totals(m, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < m; ++j) class_totals[j] += table.count(i, j);
  double gain = shannon_bits(class_totals, total);

  for (std::size_t i = 0; i < k; ++i) {
    std::int64_t row = table.row_total(i);
    if (row == 0) continue;
    std::vector<std::int64_t> row_counts(m);
    for (std::size_t j = 0; j < m; ++j) row_counts[j] = table.count(i, j);
    gain -= (static_cast<double>(row) / static_cast<double>(total)) *
            shannon_bits(row_counts, row);
  }
  return gain;
}

double score_gini(const ContingencyTable& table) {
  const std::size_t k = table.num_values();
  const std::size_t m = table.num_labels();
  const std::int64_t total = table.total();
  double impurity = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    std::int64_t row = table.row_total(i);
    if (row == 0) continue;
    double sum_sq = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      double p = static_cast<double>(table.count(i, j)) / static_cast<double>(row);
      sum_sq += p * p;
    }
    impurity += (static_cast<double>(row) / static_cast<double>(total)) * (1.0 - sum_sq);
  }
  return impurity;
}

double score(const ContingencyTable& table, CriterionKind kind, AmplitudeMode mode) {
  switch (kind) {
    case CriterionKind::Fidelity: return score_fidelity(table, mode);
    case CriterionKind::Qig: return score_qig(table, mode);
    case CriterionKind::Cig: return score_cig(table);
    case CriterionKind::Gini: return score_gini(table);
  }
  raise(ErrorCode::InvalidArgument, "unhandled criterion");
}

int select_best(const std::vector<FeatureScore>& scores) {
  if (scores.empty())
    raise(ErrorCode::EmptyScoreList, "select_best over an empty score list");
  const FeatureScore* best = &scores.front();
  for (const FeatureScore& s : scores) {
    bool improves = (s.direction == ScoreDirection::Minimize) ? s.score < best->score
                                                              : s.score > best->score;
    bool tie_lower = s.score == best->score && s.feature_index < best->feature_index;
    if (improves || tie_lower) best = &s;
  }
  return best->feature_index;
}

}  // namespace qfdt
