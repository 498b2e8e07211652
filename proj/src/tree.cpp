// SPDX-License-Identifier: Apache-2.0
#include "qfdt/tree.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "qfdt/format.hpp"

namespace qfdt {

using ordered_json = nlohmann::ordered_json;

namespace {

std::map<std::string, std::int64_t> partition_counts(const Dataset& d,
                                                     const std::vector<std::size_t>& rows) {
  std::map<std::string, std::int64_t> counts;
  for (std::size_t r : rows) ++counts[d.rows[r].label];
  return counts;
}

// argmax count; ties go to the lexicographically smallest label, which the
// sorted map order gives for free with a strict comparison.
std::string majority_label(const std::map<std::string, std::int64_t>& counts) {
  std::string best;
  std::int64_t best_count = -1;
  for (const auto& [label, count] : counts)
    if (count > best_count) {
      best = label;
      best_count = count;
    }
  return best;
}

struct Builder {
  const Dataset& data;
  CriterionKind criterion;
  const TreeConfig& config;

  std::vector<FeatureScore> score_partition(const std::vector<std::size_t>& rows,
                                            const std::vector<int>& available) const {
    std::vector<FeatureScore> scores;
    std::vector<double> column(rows.size());
    std::vector<std::string> labels(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) labels[i] = data.rows[rows[i]].label;
    for (int f : available) {
      for (std::size_t i = 0; i < rows.size(); ++i)
        column[i] = data.rows[rows[i]].values[static_cast<std::size_t>(f)];
      ContingencyTable t = build_contingency(column, labels);
      if (t.num_values() < 2) continue;  // constant here; carries no score
      scores.push_back({f, score(t, criterion, config.mode),
                        criterion_direction(criterion)});
    }
    return scores;
  }

  TreeNodePtr build(const std::vector<std::size_t>& rows, std::vector<int> available,
                    int depth, const std::string& parent_majority) const {
    if (rows.empty())  // unreachable from observed-value branching; contract kept
      return std::make_unique<TreeNode>(LeafNode{parent_majority, {}});

    auto counts = partition_counts(data, rows);
    std::string majority = majority_label(counts);
    auto leaf = [&] { return std::make_unique<TreeNode>(LeafNode{majority, counts}); };

    if (counts.size() == 1) return leaf();  // single-class partition
    std::vector<FeatureScore> scores = score_partition(rows, available);
    if (scores.empty()) return leaf();  // attributes exhausted or all constant here
    if (config.max_depth && depth >= *config.max_depth) return leaf();

    int chosen = select_best(scores);
    std::vector<int> remaining;
    for (int f : available)
      if (f != chosen) remaining.push_back(f);

    std::map<double, std::vector<std::size_t>> groups;
    for (std::size_t r : rows)
      groups[data.rows[r].values[static_cast<std::size_t>(chosen)]].push_back(r);

    InternalNode node;
    node.rule.feature_index = chosen;
    node.rule.kind = SplitRule::Kind::Multiway;
    node.fallback_label = majority;
    for (const auto& [value, group] : groups)
      node.children.emplace_back(value, build(group, remaining, depth + 1, majority));
    return std::make_unique<TreeNode>(std::move(node));
  }
};

}  // namespace

std::vector<FeatureScore> score_features(const Dataset& d, CriterionKind criterion,
                                         AmplitudeMode mode) {
  TreeConfig config;
  config.mode = mode;
  std::vector<std::size_t> rows(d.num_rows());
  std::iota(rows.begin(), rows.end(), 0);
  std::vector<int> available(d.num_features());
  std::iota(available.begin(), available.end(), 0);
  return Builder{d, criterion, config}.score_partition(rows, available);
}

TreeModel build_tree(const Dataset& d, CriterionKind criterion, const TreeConfig& config) {
  if (d.rows.empty())
    raise(ErrorCode::EmptyRootPartition, "cannot build a tree from an empty partition");
  std::vector<std::size_t> rows(d.num_rows());
  std::iota(rows.begin(), rows.end(), 0);
  std::vector<int> available(d.num_features());
  std::iota(available.begin(), available.end(), 0);

  TreeModel model;
  model.criterion = criterion;
  model.feature_names = d.schema.feature_names;
  model.root = Builder{d, criterion, config}.build(
      rows, available, 0, majority_label(partition_counts(d, rows)));
  return model;
}

namespace {

const TreeNode* descend(const InternalNode& node, double value) {
  if (node.rule.kind == SplitRule::Kind::Threshold)
    return value < node.rule.threshold ? node.children[0].second.get()
                                       : node.children[1].second.get();
  auto it = std::lower_bound(node.children.begin(), node.children.end(), value,
                             [](const auto& child, double v) { return child.first < v; });
  if (it == node.children.end() || it->first != value) return nullptr;
  return it->second.get();
}

}  // namespace

std::string predict(const TreeModel& model, std::span<const double> row) {
  const TreeNode* node = model.root.get();
  while (!node->is_leaf()) {
    const InternalNode& internal = node->internal();
    std::size_t f = static_cast<std::size_t>(internal.rule.feature_index);
    if (f >= row.size() || std::isnan(row[f])) {
      std::string name = f < model.feature_names.size() ? model.feature_names[f]
                                                        : std::to_string(f);
      raise(ErrorCode::MissingFeatureValue,
            "row provides no value for feature '" + name + "'");
    }
    const TreeNode* next = descend(internal, row[f]);
    if (next == nullptr) return internal.fallback_label;  // unseen branch value
    node = next;
  }
  return node->leaf().label;
}

namespace {

void collect_depths(const TreeNode& node, int depth, std::vector<int>& out) {
  if (node.is_leaf()) {
    out.push_back(depth);
    return;
  }
  for (const auto& [value, child] : node.internal().children)
    collect_depths(*child, depth + 1, out);
}

}  // namespace

TreeStats tree_stats(const TreeNode& root) {
  TreeStats stats;
  collect_depths(root, 0, stats.leaf_depths);
  std::sort(stats.leaf_depths.begin(), stats.leaf_depths.end());
  stats.leaf_count = stats.leaf_depths.size();
  stats.depth = stats.leaf_depths.back();
  stats.balanced = stats.leaf_depths.front() == stats.leaf_depths.back();
  return stats;
}

TreeStats tree_stats(const TreeModel& model) { return tree_stats(*model.root); }

namespace {

ordered_json node_to_json(const TreeNode& node) {
  ordered_json j;
  if (node.is_leaf()) {
    const LeafNode& leaf = node.leaf();
    ordered_json counts = ordered_json::object();
    for (const auto& [label, count] : leaf.counts) counts[label] = count;
    j["leaf"] = {{"label", leaf.label}, {"counts", std::move(counts)}};
    return j;
  }
  const InternalNode& internal = node.internal();
  ordered_json inner;
  inner["feature"] = internal.rule.feature_index;
  if (internal.rule.kind == SplitRule::Kind::Threshold) {
    inner["threshold"] = internal.rule.threshold;
    inner["below"] = node_to_json(*internal.children[0].second);
    inner["above"] = node_to_json(*internal.children[1].second);
  } else {
    ordered_json branches = ordered_json::object();
    for (const auto& [value, child] : internal.children)
      branches[format_value(value)] = node_to_json(*child);
    inner["branches"] = std::move(branches);
  }
  inner["fallback"] = internal.fallback_label;
  j["internal"] = std::move(inner);
  return j;
}

[[noreturn]] void malformed(const std::string& why) {
  raise(ErrorCode::MalformedModel, "malformed model document: " + why);
}

TreeNodePtr node_from_json(const nlohmann::json& j, std::size_t num_features) {
  if (!j.is_object() || j.size() != 1) malformed("node must hold exactly one of leaf/internal");
  if (j.contains("leaf")) {
    const auto& lj = j["leaf"];
    if (!lj.is_object() || !lj.contains("label") || !lj["label"].is_string() ||
        !lj.contains("counts") || !lj["counts"].is_object())
      malformed("leaf needs a string label and a counts object");
    LeafNode leaf;
    leaf.label = lj["label"].get<std::string>();
    for (const auto& [label, count] : lj["counts"].items()) {
      if (!count.is_number_integer() || count.get<std::int64_t>() < 0)
        malformed("leaf counts must be nonnegative integers");
      leaf.counts[label] = count.get<std::int64_t>();
    }
    return std::make_unique<TreeNode>(std::move(leaf));
  }
  if (!j.contains("internal")) malformed("node must hold leaf or internal");
  const auto& ij = j["internal"];
  if (!ij.is_object() || !ij.contains("feature") || !ij["feature"].is_number_integer() ||
      !ij.contains("fallback") || !ij["fallback"].is_string())
    malformed("internal needs an integer feature and a string fallback");

  InternalNode node;
  node.rule.feature_index = ij["feature"].get<int>();
  if (node.rule.feature_index < 0 ||
      static_cast<std::size_t>(node.rule.feature_index) >= num_features)
    malformed("feature index out of range");
  node.fallback_label = ij["fallback"].get<std::string>();

  if (ij.contains("threshold")) {
    if (!ij["threshold"].is_number() || !ij.contains("below") || !ij.contains("above"))
      malformed("threshold node needs numeric threshold plus below/above children");
    node.rule.kind = SplitRule::Kind::Threshold;
    node.rule.threshold = ij["threshold"].get<double>();
    node.children.emplace_back(0.0, node_from_json(ij["below"], num_features));
    node.children.emplace_back(1.0, node_from_json(ij["above"], num_features));
    return std::make_unique<TreeNode>(std::move(node));
  }

  if (!ij.contains("branches") || !ij["branches"].is_object() || ij["branches"].empty())
    malformed("multiway node needs a nonempty branches object");
  for (const auto& [key, child] : ij["branches"].items()) {
    double value;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), value);
    if (ec != std::errc() || ptr != key.data() + key.size())
      malformed("branch key '" + key + "' is not a number");
    node.children.emplace_back(value, node_from_json(child, num_features));
  }
  std::sort(node.children.begin(), node.children.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < node.children.size(); ++i)
    if (node.children[i].first == node.children[i - 1].first)
      malformed("duplicate branch value");
  return std::make_unique<TreeNode>(std::move(node));
}

}  // namespace

std::string serialize(const TreeModel& model) {
  ordered_json j;
  j["version"] = model.version;
  j["criterion"] = criterion_name(model.criterion);
  j["featureNames"] = model.feature_names;
  j["root"] = node_to_json(*model.root);
  return j.dump(2) + "\n";
}

TreeModel deserialize(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) malformed("not valid JSON");
  if (!j.is_object() || !j.contains("version") || !j["version"].is_number_integer())
    malformed("missing integer version");
  if (j["version"].get<int>() != 1)
    malformed("unsupported version " + j["version"].dump());
  if (!j.contains("criterion") || !j["criterion"].is_string())
    malformed("missing criterion");
  if (!j.contains("featureNames") || !j["featureNames"].is_array())
    malformed("missing featureNames array");
  if (!j.contains("root")) malformed("missing root");

  TreeModel model;
  model.version = 1;
  try {
    model.criterion = parse_criterion(j["criterion"].get<std::string>());
  } catch (const Error&) {
    malformed("unknown criterion " + j["criterion"].dump());
  }
  for (const auto& name : j["featureNames"]) {
    if (!name.is_string()) malformed("featureNames must be strings");
    model.feature_names.push_back(name.get<std::string>());
  }
  model.root = node_from_json(j["root"], model.feature_names.size());
  return model;
}

bool nodes_equal(const TreeNode& a, const TreeNode& b) {
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf())
    return a.leaf().label == b.leaf().label && a.leaf().counts == b.leaf().counts;
  const InternalNode& ia = a.internal();
  const InternalNode& ib = b.internal();
  if (ia.rule.feature_index != ib.rule.feature_index || ia.rule.kind != ib.rule.kind ||
      ia.fallback_label != ib.fallback_label || ia.children.size() != ib.children.size())
    return false;
  if (ia.rule.kind == SplitRule::Kind::Threshold && ia.rule.threshold != ib.rule.threshold)
    return false;
  for (std::size_t i = 0; i < ia.children.size(); ++i) {
    if (ia.children[i].first != ib.children[i].first) return false;
    if (!nodes_equal(*ia.children[i].second, *ib.children[i].second)) return false;
  }
  return true;
}

bool models_equal(const TreeModel& a, const TreeModel& b) {
  return a.version == b.version && a.criterion == b.criterion &&
         a.feature_names == b.feature_names && nodes_equal(*a.root, *b.root);
}

namespace {

std::string feature_display(const TreeModel& model, int index) {
  if (index >= 0 && static_cast<std::size_t>(index) < model.feature_names.size())
    return model.feature_names[static_cast<std::size_t>(index)];
  return "feature" + std::to_string(index);
}

void render_node(const TreeModel& model, const TreeNode& node, int indent,
                 std::ostringstream& out) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (node.is_leaf()) {
    const LeafNode& leaf = node.leaf();
    out << "leaf " << leaf.label << " (counts";
    if (leaf.counts.empty()) out << " none";
    for (const auto& [label, count] : leaf.counts) out << ' ' << label << '=' << count;
    out << ")\n";
    return;
  }
  const InternalNode& internal = node.internal();
  out << feature_display(model, internal.rule.feature_index) << " (fallback "
      << internal.fallback_label << ")\n";
  for (const auto& [value, child] : internal.children) {
    out << pad << "  = " << format_value(value) << " -> ";
    render_node(model, *child, indent + 2, out);
  }
}

}  // namespace

std::string render_tree(const TreeModel& model) {
  std::ostringstream out;
  render_node(model, *model.root, 0, out);
  return out.str();
}

}  // namespace qfdt
