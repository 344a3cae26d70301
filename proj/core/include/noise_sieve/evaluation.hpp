// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "noise_sieve/dataset.hpp"
#include "noise_sieve/decision_tree.hpp"
#include "noise_sieve/metrics.hpp"
#include "noise_sieve/noise_filter.hpp"

namespace noise_sieve {

enum class FilterMode { none, baseline, dynamic };

// Where the noise filter runs relative to the folds.
enum class NoiseScope {
  per_fold,  // on each fold's training part only
  global,    // once on the full dataset, before folding
};

struct FoldPlan {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  bool stratified = true;
  std::map<RowId, std::size_t> assignments;

  // Ids assigned to `fold`, in ascending id order.
  std::vector<RowId> fold_ids(std::size_t fold) const;
  std::vector<std::size_t> fold_sizes() const;

  bool operator==(const FoldPlan&) const = default;
};

/// Seeded k-fold assignment. Fold sizes differ by at most one; with
/// `stratified` the same holds within every class. Throws ConfigError when
/// k < 2 or k exceeds the row count.
FoldPlan kfold_plan(const Dataset& dataset, std::size_t k, std::uint64_t seed, bool stratified = true);

struct PipelineConfig {
  DetectionOptions detection;
  TreeConfig tree;
  Averaging averaging = Averaging::weighted;
  NoiseScope scope = NoiseScope::per_fold;
};

struct FoldResult {
  std::size_t fold = 0;
  std::vector<RowId> test_ids;
  std::vector<RowId> removed_ids;
  ConfusionMatrix confusion;
  PrecisionRecallF metrics;  // under the pipeline's averaging scheme
  std::optional<std::string> error;

  bool skipped() const { return error.has_value(); }
  bool operator==(const FoldResult&) const = default;
};

struct MethodReport {
  FilterMode method = FilterMode::none;
  std::vector<FoldResult> per_fold;
  // Mean over evaluated folds.
  PrecisionRecallF averaged;
  std::map<Averaging, PrecisionRecallF> averaged_by_scheme;
  std::vector<std::size_t> noise_removed_counts;

  bool operator==(const MethodReport&) const = default;
};

// Called with every dataset handed to a noise filter, for auditing.
using FilterObserver = std::function<void(std::size_t fold, const Dataset& filter_input)>;

/// Cross-validates filter -> decision tree. Each fold trains on the other
/// folds (noise-filtered as configured) and is tested on its own untouched
/// rows. A fold whose training part is emptied by filtering is recorded with
/// an error and left out of the averages.
MethodReport run_pipeline(const Dataset& dataset, FilterMode filter, const FoldPlan& plan,
                          const PipelineConfig& config = {}, const FilterObserver& observer = {});

struct CompareConfig {
  std::size_t folds = 10;
  std::uint64_t seed = 42;
  bool stratified = true;
  PipelineConfig pipeline;
};

/// The three arms (none, baseline, dynamic) evaluated on one shared fold plan.
struct ComparisonReport {
  std::size_t folds = 0;
  std::uint64_t seed = 0;
  bool stratified = true;
  Averaging averaging = Averaging::weighted;
  NoiseScope scope = NoiseScope::per_fold;
  SmoothingMode smoothing = SmoothingMode::laplace_on_zero;
  double smoothing_k = 1.0;
  ScoreKind score = ScoreKind::likelihood;
  SplitCriterion criterion = SplitCriterion::gain_ratio;
  std::size_t min_split = 2;
  std::vector<MethodReport> methods;

  const MethodReport& method(FilterMode mode) const;
  bool operator==(const ComparisonReport&) const = default;
};

ComparisonReport compare(const Dataset& dataset, const CompareConfig& config = {});

std::string to_string(FilterMode mode);
FilterMode filter_mode_from_string(std::string_view text);
std::string to_string(NoiseScope scope);
NoiseScope noise_scope_from_string(std::string_view text);

void to_json(nlohmann::json& out, const FoldResult& fold);
void from_json(const nlohmann::json& in, FoldResult& fold);
void to_json(nlohmann::json& out, const MethodReport& report);
void from_json(const nlohmann::json& in, MethodReport& report);
void to_json(nlohmann::json& out, const ComparisonReport& report);
void from_json(const nlohmann::json& in, ComparisonReport& report);

/// | Dataset/Method | Precision | Recall | F-measure | with one row per arm.
std::string to_markdown(const ComparisonReport& report, const std::string& dataset_name);
std::string to_markdown(const MethodReport& report, const std::string& dataset_name);

}  // namespace noise_sieve
