// SPDX-License-Identifier: Apache-2.0
//
// Recursive decision-tree construction over categorical features, with
// prediction, shape statistics, JSON (de)serialization, and a plain-text
// renderer. Trees are immutable after construction and safe to share
// across threads.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qfdt/criteria.hpp"
#include "qfdt/dataset.hpp"

namespace qfdt {

struct SplitRule {
  enum class Kind { Multiway, Threshold };
  int feature_index = -1;
  Kind kind = Kind::Multiway;
  double threshold = 0.0;  // Threshold splits only; kept for forward compatibility
};

class TreeNode;
using TreeNodePtr = std::unique_ptr<TreeNode>;

struct LeafNode {
  std::string label;
  std::map<std::string, std::int64_t> counts;
};

struct InternalNode {
  SplitRule rule;
  // Multiway: one child per observed value, ascending. Threshold: exactly
  // two children keyed 0 (below) and 1 (at/above).
  std::vector<std::pair<double, TreeNodePtr>> children;
  std::string fallback_label;  // majority label of this node's training rows
};

class TreeNode {
 public:
  explicit TreeNode(LeafNode leaf) : data_(std::move(leaf)) {}
  explicit TreeNode(InternalNode internal) : data_(std::move(internal)) {}

  bool is_leaf() const noexcept { return std::holds_alternative<LeafNode>(data_); }
  const LeafNode& leaf() const { return std::get<LeafNode>(data_); }
  const InternalNode& internal() const { return std::get<InternalNode>(data_); }

 private:
  std::variant<LeafNode, InternalNode> data_;
};

struct TreeStats {
  int depth = 0;
  std::size_t leaf_count = 0;
  std::vector<int> leaf_depths;  // ascending
  bool balanced = true;          // all leaves at equal depth
};

struct TreeConfig {
  AmplitudeMode mode = AmplitudeMode::Joint;
  std::optional<int> max_depth;  // absent = grow until the stopping rules fire
};

struct TreeModel {
  int version = 1;
  CriterionKind criterion = CriterionKind::Fidelity;
  std::vector<std::string> feature_names;
  TreeNodePtr root;
};

/// Score every non-constant feature of the partition under the given
/// criterion; constant features carry no entry.
std::vector<FeatureScore> score_features(const Dataset& d, CriterionKind criterion,
                                         AmplitudeMode mode);

/// Grow a tree: leaves on (a) no scorable features, (b) single-class
/// partitions, (c) empty child partitions (labelled by the parent majority),
/// plus the optional depth cap; otherwise split on select_best and recurse
/// with the chosen feature removed. Deterministic.
TreeModel build_tree(const Dataset& d, CriterionKind criterion,
                     const TreeConfig& config = {});

/// Descend by exact branch match; unseen categorical values fall back to the
/// node's majority label. NaN marks a missing value and raises
/// MissingFeatureValue when the path needs it.
std::string predict(const TreeModel& model, std::span<const double> row);

TreeStats tree_stats(const TreeNode& root);
TreeStats tree_stats(const TreeModel& model);

/// Model document: versioned JSON, stable key and branch ordering, so equal
/// models serialize to identical bytes.
std::string serialize(const TreeModel& model);
TreeModel deserialize(const std::string& text);

bool nodes_equal(const TreeNode& a, const TreeNode& b);
bool models_equal(const TreeModel& a, const TreeModel& b);

/// Indented ASCII rendering, one branch per line, leaves annotated with
/// label and counts, branches ordered by value.
std::string render_tree(const TreeModel& model);

}  // namespace qfdt
