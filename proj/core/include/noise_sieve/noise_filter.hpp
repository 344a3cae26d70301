// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "noise_sieve/dataset.hpp"
#include "noise_sieve/naive_bayes.hpp"

namespace noise_sieve {

enum class DetectionMethod { dynamic_threshold, all_misclassified };

// What gets stored per row and compared against the threshold.
enum class ScoreKind {
  likelihood,  // P(X | true label)
  posterior,   // P(X | true label) * P(true label)
};

struct DetectionOptions {
  SmoothingPolicy smoothing;
  ScoreKind score = ScoreKind::likelihood;
};

struct PureEntry {
  RowId id = 0;
  double likelihood = 0.0;

  bool operator==(const PureEntry&) const = default;
};

struct MisEntry {
  RowId id = 0;
  double likelihood = 0.0;
  std::string predicted;
  std::string actual;

  bool operator==(const MisEntry&) const = default;
};

// Rows split by whether the self-trained classifier reproduces their label.
// Both lists are in dataset order.
struct ClassificationPartition {
  std::vector<PureEntry> pure;
  std::vector<MisEntry> mis;

  bool operator==(const ClassificationPartition&) const = default;
};

struct LikelihoodGroup {
  double probability = 0.0;
  std::vector<RowId> member_ids;

  bool operator==(const LikelihoodGroup&) const = default;
};

struct NoiseReport {
  DetectionMethod method = DetectionMethod::dynamic_threshold;
  // Unset for the baseline, and for the dynamic method when nothing was
  // classified correctly.
  std::optional<double> threshold;
  std::vector<RowId> noise_ids;
  ClassificationPartition partition;
  std::vector<LikelihoodGroup> pure_groups;
  std::optional<std::string> warning;

  bool operator==(const NoiseReport&) const = default;
};

/// Classifies every row of `dataset` with `model` (normally fitted on the
/// same rows) and stores the score of the row's own label.
ClassificationPartition partition_by_classification(const NaiveBayesModel& model, const Dataset& dataset,
                                                    const DetectionOptions& options = {});

/// Minimum stored score over the correctly classified rows. Throws
/// std::domain_error when there are none.
double compute_threshold(const ClassificationPartition& partition);

/// One group per distinct pure score, largest score first, members in
/// dataset order.
std::vector<LikelihoodGroup> group_pure_likelihoods(const ClassificationPartition& partition);

/// Applies a detection rule to an existing partition. With no pure rows the
/// dynamic rule flags nothing and sets a warning.
NoiseReport flag_noise(ClassificationPartition partition, DetectionMethod method);

/// Dynamic-threshold detector: misclassified rows whose score is strictly
/// below the smallest score of any correctly classified row.
NoiseReport detect_noise(const Dataset& dataset, const DetectionOptions& options = {});

/// Baseline detector: every misclassified row is noise.
NoiseReport detect_noise_baseline(const Dataset& dataset, const DetectionOptions& options = {});

NoiseReport detect(const Dataset& dataset, DetectionMethod method, const DetectionOptions& options = {});

/// Drops the report's noise rows. Throws UnknownNameError if the report names
/// an id the dataset does not have.
Dataset filter_dataset(const Dataset& dataset, const NoiseReport& report);

std::string to_string(DetectionMethod method);
DetectionMethod detection_method_from_string(std::string_view text);
std::string to_string(ScoreKind kind);
ScoreKind score_kind_from_string(std::string_view text);
std::string to_string(SmoothingMode mode);
SmoothingMode smoothing_mode_from_string(std::string_view text);

// {method, threshold, noise_ids, pure_groups: [{probability, ids}],
//  mis: [{id, likelihood, predicted, actual}]}; threshold is null when unset.
nlohmann::json to_json(const NoiseReport& report);

}  // namespace noise_sieve
