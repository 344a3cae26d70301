// Apache License, Version 2.0, refer to LICENSE.txt

#include "noise_sieve/noise_filter.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "noise_sieve/error.hpp"

namespace noise_sieve {

ClassificationPartition partition_by_classification(const NaiveBayesModel& model, const Dataset& dataset,
                                                    const DetectionOptions& options) {
  if (!(model.schema() == dataset.schema())) {
    throw SchemaError("model and dataset schemas differ");
  }
  ClassificationPartition partition;
  for (const auto& row : dataset.rows()) {
    const auto prediction = model.predict(row.instance, options.smoothing);
    const std::size_t actual = dataset.schema().label_index(row.label);
    const double stored =
        options.score == ScoreKind::posterior ? prediction.scores[actual] : prediction.likelihoods[actual];
    if (prediction.label_index == actual) {
      partition.pure.push_back({row.id, stored});
    } else {
      partition.mis.push_back({row.id, stored, prediction.label, row.label});
    }
  }
  return partition;
}

double compute_threshold(const ClassificationPartition& partition) {
  if (partition.pure.empty()) throw std::domain_error("no correctly classified instances to derive a threshold from");
  return std::min_element(partition.pure.begin(), partition.pure.end(),
                          [](const PureEntry& a, const PureEntry& b) { return a.likelihood < b.likelihood; })
      ->likelihood;
}

std::vector<LikelihoodGroup> group_pure_likelihoods(const ClassificationPartition& partition) {
  std::map<double, std::vector<RowId>, std::greater<>> groups;
  for (const auto& entry : partition.pure) groups[entry.likelihood].push_back(entry.id);
  std::vector<LikelihoodGroup> out;
  out.reserve(groups.size());
  for (auto& [probability, ids] : groups) out.push_back({probability, std::move(ids)});
  return out;
}

NoiseReport flag_noise(ClassificationPartition partition, DetectionMethod method) {
  NoiseReport report;
  report.method = method;
  report.partition = std::move(partition);
  report.pure_groups = group_pure_likelihoods(report.partition);
  if (method == DetectionMethod::all_misclassified) {
    for (const auto& entry : report.partition.mis) report.noise_ids.push_back(entry.id);
    return report;
  }
  if (report.partition.pure.empty()) {
    report.warning = "no instance was classified correctly; noise threshold undefined, nothing flagged";
    return report;
  }
  const double threshold = compute_threshold(report.partition);
  report.threshold = threshold;
  for (const auto& entry : report.partition.mis) {
    if (entry.likelihood < threshold) report.noise_ids.push_back(entry.id);
  }
  return report;
}

NoiseReport detect(const Dataset& dataset, DetectionMethod method, const DetectionOptions& options) {
  if (dataset.empty()) throw EmptyDatasetError("cannot detect noise in an empty dataset");
  const auto model = NaiveBayesModel::fit(dataset);
  return flag_noise(partition_by_classification(model, dataset, options), method);
}

NoiseReport detect_noise(const Dataset& dataset, const DetectionOptions& options) {
  return detect(dataset, DetectionMethod::dynamic_threshold, options);
}

NoiseReport detect_noise_baseline(const Dataset& dataset, const DetectionOptions& options) {
  return detect(dataset, DetectionMethod::all_misclassified, options);
}

Dataset filter_dataset(const Dataset& dataset, const NoiseReport& report) {
  std::set<RowId> known;
  for (const auto& row : dataset.rows()) known.insert(row.id);
  std::set<RowId> drop;
  for (RowId id : report.noise_ids) {
    if (!known.contains(id)) throw UnknownNameError("noise report names unknown row id " + std::to_string(id));
    drop.insert(id);
  }
  return dataset.without(drop);
}

std::string to_string(DetectionMethod method) {
  return method == DetectionMethod::dynamic_threshold ? "dynamic-threshold" : "all-misclassified";
}

DetectionMethod detection_method_from_string(std::string_view text) {
  if (text == "dynamic-threshold" || text == "dynamic") return DetectionMethod::dynamic_threshold;
  if (text == "all-misclassified" || text == "baseline") return DetectionMethod::all_misclassified;
  throw ConfigError("unknown detection method '" + std::string(text) + "'");
}

std::string to_string(ScoreKind kind) { return kind == ScoreKind::likelihood ? "likelihood" : "posterior"; }

ScoreKind score_kind_from_string(std::string_view text) {
  if (text == "likelihood") return ScoreKind::likelihood;
  if (text == "posterior") return ScoreKind::posterior;
  throw ConfigError("unknown score kind '" + std::string(text) + "'");
}

std::string to_string(SmoothingMode mode) {
  switch (mode) {
    case SmoothingMode::none:
      return "none";
    case SmoothingMode::laplace_on_zero:
      return "laplace-on-zero";
    case SmoothingMode::laplace_always:
      return "laplace-always";
  }
  return "none";
}

SmoothingMode smoothing_mode_from_string(std::string_view text) {
  if (text == "none") return SmoothingMode::none;
  if (text == "laplace-on-zero") return SmoothingMode::laplace_on_zero;
  if (text == "laplace-always") return SmoothingMode::laplace_always;
  throw ConfigError("unknown smoothing mode '" + std::string(text) + "'");
}

nlohmann::json to_json(const NoiseReport& report) {
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& group : report.pure_groups) {
    groups.push_back({{"probability", group.probability}, {"ids", group.member_ids}});
  }
  nlohmann::json mis = nlohmann::json::array();
  for (const auto& entry : report.partition.mis) {
    mis.push_back({{"id", entry.id}, {"likelihood", entry.likelihood}, {"predicted", entry.predicted},
                   {"actual", entry.actual}});
  }
  nlohmann::json out;
  out["method"] = to_string(report.method);
  out["threshold"] = report.threshold ? nlohmann::json(*report.threshold) : nlohmann::json(nullptr);
  out["noise_ids"] = report.noise_ids;
  out["pure_groups"] = std::move(groups);
  out["mis"] = std::move(mis);
  return out;
}

}  // namespace noise_sieve
