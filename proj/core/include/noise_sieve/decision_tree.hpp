// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "noise_sieve/dataset.hpp"

namespace noise_sieve {

enum class SplitCriterion { gain_ratio, info_gain };

struct TreeConfig {
  std::size_t min_split = 2;
  SplitCriterion criterion = SplitCriterion::gain_ratio;
};

/// Node of a multiway categorical decision tree.
///
/// A leaf has no split attribute; `label` is then its prediction. For an
/// internal node `label` is the majority class of its training subset and is
/// used for values that have no child.
struct TreeNode {
  std::optional<std::size_t> attribute;
  std::string attribute_name;
  std::string label;
  std::size_t support = 0;
  // Sorted by value.
  std::vector<std::pair<std::string, TreeNode>> children;

  bool is_leaf() const { return !attribute.has_value(); }
  const TreeNode* child(std::string_view value) const;

  bool operator==(const TreeNode&) const = default;
};

struct SplitScores {
  double info_gain = 0.0;
  double split_info = 0.0;
  double gain_ratio = 0.0;
};

/// Shannon entropy in bits. Throws std::invalid_argument if all counts are 0.
double entropy(std::span<const std::size_t> class_counts);

/// Information gain, split information and their ratio (0 when the split
/// information is 0) for a multiway split on `attribute`.
SplitScores split_scores(const Dataset& dataset, std::string_view attribute);
SplitScores split_scores(const Dataset& dataset, std::size_t attribute_index);

/// Unpruned C4.5-style induction. Throws EmptyDatasetError on no rows and
/// std::invalid_argument on min_split == 0.
TreeNode build_tree(const Dataset& dataset, const TreeConfig& config = {});

/// Walks the tree; an unseen value returns the majority label of the node
/// where the walk stops.
const std::string& predict_tree(const TreeNode& tree, const Instance& instance);

std::size_t tree_depth(const TreeNode& tree);
std::size_t leaf_count(const TreeNode& tree);

// Internal: {attribute, majority, children: {value: subtree}}; leaf: {label, support}.
nlohmann::json to_json(const TreeNode& tree);

std::string to_string(SplitCriterion criterion);
SplitCriterion split_criterion_from_string(std::string_view text);

}  // namespace noise_sieve
