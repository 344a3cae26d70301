// Apache License, Version 2.0, refer to LICENSE.txt

#include "noise_sieve/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "noise_sieve/error.hpp"

namespace noise_sieve {

const TreeNode* TreeNode::child(std::string_view value) const {
  auto it = std::lower_bound(children.begin(), children.end(), value,
                             [](const auto& entry, std::string_view v) { return entry.first < v; });
  if (it == children.end() || it->first != value) return nullptr;
  return &it->second;
}

double entropy(std::span<const std::size_t> class_counts) {
  const std::size_t total = std::accumulate(class_counts.begin(), class_counts.end(), std::size_t{0});
  if (total == 0) throw std::invalid_argument("entropy of an empty distribution");
  double bits = 0.0;
  for (std::size_t count : class_counts) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / static_cast<double>(total);
    bits -= p * std::log2(p);
  }
  return std::max(bits, 0.0);
}

namespace {

using Rows = std::vector<const LabeledInstance*>;

std::vector<std::size_t> label_histogram(const AttributeSchema& schema, const Rows& rows) {
  std::vector<std::size_t> counts(schema.label_count(), 0);
  for (const auto* row : rows) ++counts[schema.label_index(row->label)];
  return counts;
}

std::map<std::string, Rows> partition_rows(const Rows& rows, std::size_t attribute) {
  std::map<std::string, Rows> parts;
  for (const auto* row : rows) parts[row->instance.values[attribute]].push_back(row);
  return parts;
}

SplitScores score_split(const AttributeSchema& schema, const Rows& rows, std::size_t attribute) {
  const auto parent = label_histogram(schema, rows);
  const double n = static_cast<double>(rows.size());
  SplitScores scores;
  double remainder = 0.0;
  std::vector<std::size_t> sizes;
  for (const auto& [value, subset] : partition_rows(rows, attribute)) {
    const auto counts = label_histogram(schema, subset);
    remainder += static_cast<double>(subset.size()) / n * entropy(counts);
    sizes.push_back(subset.size());
  }
  // Clamp round-off so a useless split never reports a tiny negative gain.
  scores.info_gain = std::max(entropy(parent) - remainder, 0.0);
  scores.split_info = entropy(sizes);
  scores.gain_ratio = scores.split_info > 0.0 ? scores.info_gain / scores.split_info : 0.0;
  return scores;
}

std::size_t majority(const std::vector<std::size_t>& counts) {
  // max_element returns the first maximum, i.e. the earliest schema label.
  return static_cast<std::size_t>(std::distance(counts.begin(), std::max_element(counts.begin(), counts.end())));
}

TreeNode grow(const AttributeSchema& schema, const Rows& rows, std::vector<bool>& used, const TreeConfig& config) {
  const auto counts = label_histogram(schema, rows);
  TreeNode node;
  node.label = schema.class_labels()[majority(counts)];
  node.support = rows.size();

  const bool pure = std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) <= 1;
  if (pure || rows.size() < config.min_split) return node;

  std::optional<std::size_t> best;
  double best_score = -1.0;
  for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
    if (used[a]) continue;
    // A split with a single branch separates nothing.
    if (partition_rows(rows, a).size() < 2) continue;
    const auto scores = score_split(schema, rows, a);
    const double value = config.criterion == SplitCriterion::gain_ratio ? scores.gain_ratio : scores.info_gain;
    if (value > best_score) {
      best_score = value;
      best = a;
    }
  }
  if (!best) return node;

  node.attribute = *best;
  node.attribute_name = schema.attribute_name(*best);
  used[*best] = true;
  for (auto& [value, subset] : partition_rows(rows, *best)) {
    node.children.emplace_back(value, grow(schema, subset, used, config));
  }
  used[*best] = false;
  return node;
}

}  // namespace

SplitScores split_scores(const Dataset& dataset, std::size_t attribute_index) {
  if (dataset.empty()) throw EmptyDatasetError("split scores of an empty dataset");
  if (attribute_index >= dataset.schema().attribute_count()) throw UnknownNameError("attribute index out of range");
  Rows rows;
  for (const auto& row : dataset.rows()) rows.push_back(&row);
  return score_split(dataset.schema(), rows, attribute_index);
}

SplitScores split_scores(const Dataset& dataset, std::string_view attribute) {
  return split_scores(dataset, dataset.schema().attribute_index(attribute));
}

TreeNode build_tree(const Dataset& dataset, const TreeConfig& config) {
  if (dataset.empty()) throw EmptyDatasetError("cannot build a tree from an empty dataset");
  if (config.min_split == 0) throw std::invalid_argument("min_split must be >= 1");
  Rows rows;
  rows.reserve(dataset.size());
  for (const auto& row : dataset.rows()) rows.push_back(&row);
  std::vector<bool> used(dataset.schema().attribute_count(), false);
  return grow(dataset.schema(), rows, used, config);
}

const std::string& predict_tree(const TreeNode& tree, const Instance& instance) {
  const TreeNode* node = &tree;
  while (!node->is_leaf()) {
    const auto* next = node->child(instance.values.at(*node->attribute));
    if (!next) break;
    node = next;
  }
  return node->label;
}

std::size_t tree_depth(const TreeNode& tree) {
  std::size_t deepest = 0;
  for (const auto& [value, child] : tree.children) deepest = std::max(deepest, tree_depth(child));
  return tree.is_leaf() ? 0 : deepest + 1;
}

std::size_t leaf_count(const TreeNode& tree) {
  if (tree.is_leaf()) return 1;
  std::size_t leaves = 0;
  for (const auto& [value, child] : tree.children) leaves += leaf_count(child);
  return leaves;
}

nlohmann::json to_json(const TreeNode& tree) {
  if (tree.is_leaf()) return {{"label", tree.label}, {"support", tree.support}};
  nlohmann::json children = nlohmann::json::object();
  for (const auto& [value, child] : tree.children) children[value] = to_json(child);
  return {{"attribute", tree.attribute_name}, {"majority", tree.label}, {"children", std::move(children)}};
}

std::string to_string(SplitCriterion criterion) {
  return criterion == SplitCriterion::gain_ratio ? "gain-ratio" : "info-gain";
}

SplitCriterion split_criterion_from_string(std::string_view text) {
  if (text == "gain-ratio") return SplitCriterion::gain_ratio;
  if (text == "info-gain") return SplitCriterion::info_gain;
  throw ConfigError("unknown split criterion '" + std::string(text) + "'");
}

}  // namespace noise_sieve
