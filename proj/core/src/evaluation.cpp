// Apache License, Version 2.0, refer to LICENSE.txt

#include "noise_sieve/evaluation.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <set>
#include <sstream>

#include "noise_sieve/error.hpp"
#include "noise_sieve/random.hpp"

namespace noise_sieve {

namespace {

constexpr std::array kAllSchemes{Averaging::weighted, Averaging::macro, Averaging::micro};
constexpr std::array kAllFilters{FilterMode::none, FilterMode::baseline, FilterMode::dynamic};

}  // namespace

std::vector<RowId> FoldPlan::fold_ids(std::size_t fold) const {
  std::vector<RowId> ids;
  for (const auto& [id, assigned] : assignments) {
    if (assigned == fold) ids.push_back(id);
  }
  return ids;
}

std::vector<std::size_t> FoldPlan::fold_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (const auto& [id, fold] : assignments) ++sizes.at(fold);
  return sizes;
}

FoldPlan kfold_plan(const Dataset& dataset, std::size_t k, std::uint64_t seed, bool stratified) {
  if (k < 2) throw ConfigError("k-fold cross-validation needs k >= 2, got " + std::to_string(k));
  if (k > dataset.size()) {
    throw ConfigError("k = " + std::to_string(k) + " exceeds the number of rows (" + std::to_string(dataset.size()) +
                      ")");
  }
  Rng rng(seed);
  std::vector<RowId> order;
  order.reserve(dataset.size());
  if (stratified) {
    // Shuffle each class separately and deal the concatenation round-robin;
    // every class occupies a contiguous run, so it spreads within +-1.
    const auto& schema = dataset.schema();
    for (std::size_t c = 0; c < schema.label_count(); ++c) {
      std::vector<RowId> members;
      for (const auto& row : dataset.rows()) {
        if (row.label == schema.class_labels()[c]) members.push_back(row.id);
      }
      rng.shuffle(std::span(members));
      order.insert(order.end(), members.begin(), members.end());
    }
  } else {
    for (const auto& row : dataset.rows()) order.push_back(row.id);
    rng.shuffle(std::span(order));
  }
  FoldPlan plan{k, seed, stratified, {}};
  for (std::size_t position = 0; position < order.size(); ++position) {
    plan.assignments.emplace(order[position], position % k);
  }
  return plan;
}

namespace {

std::optional<DetectionMethod> detection_for(FilterMode filter) {
  switch (filter) {
    case FilterMode::none:
      return std::nullopt;
    case FilterMode::baseline:
      return DetectionMethod::all_misclassified;
    case FilterMode::dynamic:
      return DetectionMethod::dynamic_threshold;
  }
  return std::nullopt;
}

PrecisionRecallF mean_of(const std::vector<PrecisionRecallF>& values) {
  PrecisionRecallF mean;
  if (values.empty()) return mean;
  for (const auto& v : values) {
    mean.precision += v.precision;
    mean.recall += v.recall;
    mean.f_measure += v.f_measure;
  }
  const double n = static_cast<double>(values.size());
  mean.precision /= n;
  mean.recall /= n;
  mean.f_measure /= n;
  return mean;
}

}  // namespace

MethodReport run_pipeline(const Dataset& dataset, FilterMode filter, const FoldPlan& plan,
                          const PipelineConfig& config, const FilterObserver& observer) {
  if (plan.assignments.size() != dataset.size()) throw ConfigError("fold plan does not cover the dataset");
  for (const auto& row : dataset.rows()) {
    if (!plan.assignments.contains(row.id)) {
      throw ConfigError("fold plan has no assignment for row id " + std::to_string(row.id));
    }
  }

  const auto method = detection_for(filter);
  std::set<RowId> global_noise;
  if (method && config.scope == NoiseScope::global) {
    if (observer) observer(plan.k, dataset);
    const auto report = detect(dataset, *method, config.detection);
    global_noise.insert(report.noise_ids.begin(), report.noise_ids.end());
  }

  MethodReport out;
  out.method = filter;
  std::vector<PrecisionRecallF> evaluated;
  std::map<Averaging, std::vector<PrecisionRecallF>> evaluated_by_scheme;

  for (std::size_t fold = 0; fold < plan.k; ++fold) {
    FoldResult result;
    result.fold = fold;
    result.test_ids = plan.fold_ids(fold);
    const std::set<RowId> test_set(result.test_ids.begin(), result.test_ids.end());
    const Dataset test = dataset.restricted_to(test_set);
    Dataset train = dataset.without(test_set);

    if (method && config.scope == NoiseScope::per_fold) {
      if (observer) observer(fold, train);
      const auto report = detect(train, *method, config.detection);
      result.removed_ids = report.noise_ids;
      train = filter_dataset(train, report);
    } else if (method) {
      for (const auto& row : train.rows()) {
        if (global_noise.contains(row.id)) result.removed_ids.push_back(row.id);
      }
      train = train.without(global_noise);
    }
    out.noise_removed_counts.push_back(result.removed_ids.size());

    if (train.empty()) {
      result.error = "noise filtering removed every training instance";
      out.per_fold.push_back(std::move(result));
      continue;
    }

    const auto tree = build_tree(train, config.tree);
    std::vector<std::string> predicted;
    std::vector<std::string> actual;
    for (const auto& row : test.rows()) {
      predicted.push_back(predict_tree(tree, row.instance));
      actual.push_back(row.label);
    }
    result.confusion = confusion(predicted, actual, dataset.schema().class_labels());
    result.metrics = aggregate(result.confusion, config.averaging);
    evaluated.push_back(result.metrics);
    for (Averaging scheme : kAllSchemes) {
      evaluated_by_scheme[scheme].push_back(aggregate(result.confusion, scheme));
    }
    out.per_fold.push_back(std::move(result));
  }

  out.averaged = mean_of(evaluated);
  for (Averaging scheme : kAllSchemes) out.averaged_by_scheme[scheme] = mean_of(evaluated_by_scheme[scheme]);
  return out;
}

const MethodReport& ComparisonReport::method(FilterMode mode) const {
  for (const auto& report : methods) {
    if (report.method == mode) return report;
  }
  throw UnknownNameError("comparison report has no arm '" + to_string(mode) + "'");
}

ComparisonReport compare(const Dataset& dataset, const CompareConfig& config) {
  const auto plan = kfold_plan(dataset, config.folds, config.seed, config.stratified);
  ComparisonReport report;
  report.folds = config.folds;
  report.seed = config.seed;
  report.stratified = config.stratified;
  report.averaging = config.pipeline.averaging;
  report.scope = config.pipeline.scope;
  report.smoothing = config.pipeline.detection.smoothing.mode;
  report.smoothing_k = config.pipeline.detection.smoothing.k;
  report.score = config.pipeline.detection.score;
  report.criterion = config.pipeline.tree.criterion;
  report.min_split = config.pipeline.tree.min_split;
  for (FilterMode filter : kAllFilters) report.methods.push_back(run_pipeline(dataset, filter, plan, config.pipeline));
  return report;
}

std::string to_string(FilterMode mode) {
  switch (mode) {
    case FilterMode::none:
      return "none";
    case FilterMode::baseline:
      return "baseline";
    case FilterMode::dynamic:
      return "dynamic";
  }
  return "none";
}

FilterMode filter_mode_from_string(std::string_view text) {
  if (text == "none") return FilterMode::none;
  if (text == "baseline") return FilterMode::baseline;
  if (text == "dynamic") return FilterMode::dynamic;
  throw ConfigError("unknown filter mode '" + std::string(text) + "'");
}

std::string to_string(NoiseScope scope) { return scope == NoiseScope::per_fold ? "per-fold" : "global"; }

NoiseScope noise_scope_from_string(std::string_view text) {
  if (text == "per-fold") return NoiseScope::per_fold;
  if (text == "global") return NoiseScope::global;
  throw ConfigError("unknown noise scope '" + std::string(text) + "'");
}

void to_json(nlohmann::json& out, const FoldResult& fold) {
  out = {{"fold", fold.fold},
         {"test_ids", fold.test_ids},
         {"removed_ids", fold.removed_ids},
         {"confusion", fold.confusion},
         {"precision", fold.metrics.precision},
         {"recall", fold.metrics.recall},
         {"f_measure", fold.metrics.f_measure},
         {"error", fold.error ? nlohmann::json(*fold.error) : nlohmann::json(nullptr)}};
}

void from_json(const nlohmann::json& in, FoldResult& fold) {
  in.at("fold").get_to(fold.fold);
  in.at("test_ids").get_to(fold.test_ids);
  in.at("removed_ids").get_to(fold.removed_ids);
  in.at("confusion").get_to(fold.confusion);
  in.at("precision").get_to(fold.metrics.precision);
  in.at("recall").get_to(fold.metrics.recall);
  in.at("f_measure").get_to(fold.metrics.f_measure);
  const auto& error = in.at("error");
  fold.error = error.is_null() ? std::nullopt : std::optional<std::string>(error.get<std::string>());
}

void to_json(nlohmann::json& out, const MethodReport& report) {
  nlohmann::json schemes = nlohmann::json::object();
  for (const auto& [scheme, prf] : report.averaged_by_scheme) schemes[to_string(scheme)] = prf;
  out = {{"method", to_string(report.method)},
         {"per_fold", report.per_fold},
         {"averaged", report.averaged},
         {"averaged_by_scheme", std::move(schemes)},
         {"noise_removed_counts", report.noise_removed_counts}};
}

void from_json(const nlohmann::json& in, MethodReport& report) {
  report.method = filter_mode_from_string(in.at("method").get<std::string>());
  in.at("per_fold").get_to(report.per_fold);
  in.at("averaged").get_to(report.averaged);
  report.averaged_by_scheme.clear();
  for (const auto& [name, prf] : in.at("averaged_by_scheme").items()) {
    report.averaged_by_scheme[averaging_from_string(name)] = prf.get<PrecisionRecallF>();
  }
  in.at("noise_removed_counts").get_to(report.noise_removed_counts);
}

void to_json(nlohmann::json& out, const ComparisonReport& report) {
  out = {{"folds", report.folds},
         {"seed", report.seed},
         {"stratified", report.stratified},
         {"averaging", to_string(report.averaging)},
         {"filter_scope", to_string(report.scope)},
         {"smoothing", to_string(report.smoothing)},
         {"smoothing_k", report.smoothing_k},
         {"score", to_string(report.score)},
         {"split_criterion", to_string(report.criterion)},
         {"min_split", report.min_split},
         {"methods", report.methods}};
}

void from_json(const nlohmann::json& in, ComparisonReport& report) {
  in.at("folds").get_to(report.folds);
  in.at("seed").get_to(report.seed);
  in.at("stratified").get_to(report.stratified);
  report.averaging = averaging_from_string(in.at("averaging").get<std::string>());
  report.scope = noise_scope_from_string(in.at("filter_scope").get<std::string>());
  report.smoothing = smoothing_mode_from_string(in.at("smoothing").get<std::string>());
  in.at("smoothing_k").get_to(report.smoothing_k);
  report.score = score_kind_from_string(in.at("score").get<std::string>());
  report.criterion = split_criterion_from_string(in.at("split_criterion").get<std::string>());
  in.at("min_split").get_to(report.min_split);
  in.at("methods").get_to(report.methods);
}

namespace {

std::string arm_name(FilterMode mode) {
  switch (mode) {
    case FilterMode::none:
      return "no filter";
    case FilterMode::baseline:
      return "NBC (all misclassified)";
    case FilterMode::dynamic:
      return "dynamic threshold";
  }
  return "";
}

std::string fixed2(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", value);
  return buffer;
}

void markdown_row(std::ostringstream& out, const MethodReport& report, const std::string& dataset_name) {
  out << "| " << dataset_name << " / " << arm_name(report.method) << " | " << fixed2(report.averaged.precision)
      << " | " << fixed2(report.averaged.recall) << " | " << fixed2(report.averaged.f_measure) << " |\n";
}

constexpr const char* kMarkdownHeader =
    "| Dataset/Method | Precision | Recall | F-measure |\n"
    "|---|---|---|---|\n";

}  // namespace

std::string to_markdown(const ComparisonReport& report, const std::string& dataset_name) {
  std::ostringstream out;
  out << kMarkdownHeader;
  for (const auto& method : report.methods) markdown_row(out, method, dataset_name);
  return out.str();
}

std::string to_markdown(const MethodReport& report, const std::string& dataset_name) {
  std::ostringstream out;
  out << kMarkdownHeader;
  markdown_row(out, report, dataset_name);
  return out.str();
}

}  // namespace noise_sieve
