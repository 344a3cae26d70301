// Apache License, Version 2.0, refer to LICENSE.txt

#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "noise_sieve/dataset_csv.hpp"
#include "noise_sieve/decision_tree.hpp"
#include "noise_sieve/error.hpp"
#include "noise_sieve/evaluation.hpp"
#include "noise_sieve/ingest.hpp"
#include "noise_sieve/noise_filter.hpp"
#include "noise_sieve/synth.hpp"

namespace noise_sieve::cli {

namespace {

struct Options {
  std::string input;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 42;
  std::string smoothing = "laplace-on-zero";
  double smoothing_k = 1.0;
  std::string score = "likelihood";
  bool raw = false;
  std::string segments;

  std::string method = "dynamic";
  std::string filter = "dynamic";
  std::size_t folds = 10;
  std::string filter_scope = "per-fold";
  std::string averaging = "weighted";
  bool no_stratify = false;
  std::size_t min_split = 2;
  std::string criterion = "gain-ratio";
  std::string markdown_out;

  std::string config;
  std::optional<std::uint64_t> synth_seed;
  double noise_rate = 0.0;
  std::string truth;
};

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_st>(err);
  auto logger = std::make_shared<spdlog::logger>("noise_sieve", sink);
  logger->set_pattern("[%l] %v");
  logger->set_level(spdlog::level::warn);
  if (const char* level = std::getenv("NOISE_SIEVE_LOG")) {
    const std::string value(level);
    if (value == "debug") logger->set_level(spdlog::level::debug);
    if (value == "info") logger->set_level(spdlog::level::info);
  }
  return logger;
}

std::string stem_of(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  return dot == std::string::npos || dot == 0 ? name : name.substr(0, dot);
}

void check_format(const Options& options) {
  if (options.format != "json" && options.format != "markdown") {
    throw ConfigError("--format must be json or markdown");
  }
}

DetectionOptions detection_options(const Options& options) {
  DetectionOptions detection;
  detection.smoothing.mode = smoothing_mode_from_string(options.smoothing);
  if (!(options.smoothing_k > 0.0)) throw ConfigError("--smoothing-k must be positive");
  detection.smoothing.k = options.smoothing_k;
  detection.score = score_kind_from_string(options.score);
  return detection;
}

PipelineConfig pipeline_config(const Options& options) {
  PipelineConfig config;
  config.detection = detection_options(options);
  if (options.min_split < 1) throw ConfigError("--min-split must be >= 1");
  config.tree.min_split = options.min_split;
  config.tree.criterion = split_criterion_from_string(options.criterion);
  config.averaging = averaging_from_string(options.averaging);
  config.scope = noise_scope_from_string(options.filter_scope);
  return config;
}

Dataset load_input(const Options& options, spdlog::logger& log) {
  if (options.input.empty()) throw ConfigError("--input is required");
  if (options.raw) {
    const auto segmentation =
        options.segments.empty() ? SegmentationConfig::standard() : SegmentationConfig::from_file(options.segments);
    auto dataset = to_dataset(parse_log_file(options.input), segmentation);
    log.info("ingested {} call records from {}", dataset.size(), options.input);
    return dataset;
  }
  auto dataset = read_dataset_csv_file(options.input);
  log.info("loaded {} rows, {} attributes from {}", dataset.size(), dataset.schema().attribute_count(), options.input);
  return dataset;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << content;
  if (!file) throw InputError("failed writing '" + path + "'");
}

// Writes to --out when given, else to stdout.
void emit(const Options& options, std::ostream& out, const std::string& content) {
  if (options.out.empty()) {
    out << content;
  } else {
    write_file(options.out, content);
  }
}

std::string class_distribution(const Dataset& dataset) {
  std::ostringstream text;
  for (const auto& label : dataset.schema().class_labels()) {
    const auto count = std::count_if(dataset.rows().begin(), dataset.rows().end(),
                                     [&](const LabeledInstance& row) { return row.label == label; });
    text << "  " << label << ": " << count << '\n';
  }
  return text.str();
}

void log_report(const NoiseReport& report, spdlog::logger& log) {
  if (report.warning) log.warn("{}", *report.warning);
  log.info("{} purely classified, {} misclassified, {} flagged as noise", report.partition.pure.size(),
           report.partition.mis.size(), report.noise_ids.size());
  if (report.threshold) log.debug("noise threshold {:.6e}", *report.threshold);
}

void log_method(const MethodReport& report, spdlog::logger& log) {
  for (const auto& fold : report.per_fold) {
    if (fold.error) {
      log.warn("{} arm, fold {} skipped: {}", to_string(report.method), fold.fold, *fold.error);
    } else {
      log.debug("{} arm, fold {}: removed {}, f {:.4f}", to_string(report.method), fold.fold, fold.removed_ids.size(),
                fold.metrics.f_measure);
    }
  }
}

std::string join_ids(const std::vector<RowId>& ids) {
  std::string text;
  for (std::size_t i = 0; i < ids.size(); ++i) text += (i ? ", " : "") + std::to_string(ids[i]);
  return text;
}

int cmd_ingest(const Options& options, std::ostream& out, spdlog::logger& log) {
  if (options.input.empty()) throw ConfigError("--input is required");
  if (options.out.empty()) throw ConfigError("--out is required");
  const auto segmentation =
      options.segments.empty() ? SegmentationConfig::standard() : SegmentationConfig::from_file(options.segments);
  const auto dataset = to_dataset(parse_log_file(options.input), segmentation);
  std::ostringstream csv;
  write_dataset_csv(csv, dataset);
  write_file(options.out, csv.str());
  log.info("wrote {}", options.out);
  out << dataset.size() << " rows\n" << class_distribution(dataset);
  return kSuccess;
}

int cmd_detect(const Options& options, std::ostream& out, spdlog::logger& log) {
  check_format(options);
  const auto dataset = load_input(options, log);
  const auto report = detect(dataset, detection_method_from_string(options.method), detection_options(options));
  log_report(report, log);
  if (options.format == "json") {
    emit(options, out, to_json(report).dump(2) + "\n");
    return kSuccess;
  }
  std::ostringstream text;
  text << "| Method | Threshold | Purely classified | Misclassified | Noise | Noise ids |\n"
       << "|---|---|---|---|---|---|\n"
       << "| " << to_string(report.method) << " | "
       << (report.threshold ? nlohmann::json(*report.threshold).dump() : std::string("none")) << " | "
       << report.partition.pure.size() << " | " << report.partition.mis.size() << " | " << report.noise_ids.size()
       << " | " << join_ids(report.noise_ids) << " |\n";
  emit(options, out, text.str());
  return kSuccess;
}

int cmd_train(const Options& options, std::ostream& out, spdlog::logger& log) {
  check_format(options);
  auto dataset = load_input(options, log);
  const auto config = pipeline_config(options);
  const auto filter = filter_mode_from_string(options.filter);
  std::vector<RowId> removed;
  if (filter != FilterMode::none) {
    const auto method =
        filter == FilterMode::dynamic ? DetectionMethod::dynamic_threshold : DetectionMethod::all_misclassified;
    const auto report = detect(dataset, method, config.detection);
    log_report(report, log);
    removed = report.noise_ids;
    dataset = filter_dataset(dataset, report);
  }
  if (dataset.empty()) throw InputError("noise filtering removed every instance; nothing to train on");
  const auto tree = build_tree(dataset, config.tree);
  std::size_t correct = 0;
  for (const auto& row : dataset.rows()) correct += predict_tree(tree, row.instance) == row.label ? 1 : 0;
  const double accuracy = static_cast<double>(correct) / static_cast<double>(dataset.size());

  if (options.format == "json") {
    nlohmann::json doc = {{"filter", to_string(filter)},
                          {"removed_ids", removed},
                          {"training_rows", dataset.size()},
                          {"training_accuracy", accuracy},
                          {"depth", tree_depth(tree)},
                          {"leaves", leaf_count(tree)},
                          {"tree", to_json(tree)}};
    emit(options, out, doc.dump(2) + "\n");
  } else {
    std::ostringstream text;
    text << "| Filter | Removed | Training rows | Training accuracy | Depth | Leaves |\n"
         << "|---|---|---|---|---|---|\n"
         << "| " << to_string(filter) << " | " << removed.size() << " | " << dataset.size() << " | " << accuracy
         << " | " << tree_depth(tree) << " | " << leaf_count(tree) << " |\n";
    emit(options, out, text.str());
  }
  return kSuccess;
}

int cmd_evaluate(const Options& options, std::ostream& out, spdlog::logger& log) {
  check_format(options);
  const auto dataset = load_input(options, log);
  const auto plan = kfold_plan(dataset, options.folds, options.seed, !options.no_stratify);
  const auto report = run_pipeline(dataset, filter_mode_from_string(options.filter), plan, pipeline_config(options));
  log_method(report, log);
  emit(options, out,
       options.format == "json" ? nlohmann::json(report).dump(2) + "\n" : to_markdown(report, stem_of(options.input)));
  return kSuccess;
}

int cmd_compare(const Options& options, std::ostream& out, spdlog::logger& log) {
  check_format(options);
  const auto dataset = load_input(options, log);
  CompareConfig config;
  config.folds = options.folds;
  config.seed = options.seed;
  config.stratified = !options.no_stratify;
  config.pipeline = pipeline_config(options);
  const auto report = compare(dataset, config);
  for (const auto& method : report.methods) log_method(method, log);
  const auto table = to_markdown(report, stem_of(options.input));
  if (!options.markdown_out.empty()) write_file(options.markdown_out, table);
  emit(options, out, options.format == "json" ? nlohmann::json(report).dump(2) + "\n" : table);
  return kSuccess;
}

int cmd_synth(const Options& options, std::ostream& out, spdlog::logger& log) {
  if (options.config.empty()) throw ConfigError("--config is required");
  if (options.out.empty()) throw ConfigError("--out is required");
  auto config = generator_config_from_file(options.config);
  if (options.synth_seed) config.seed = *options.synth_seed;
  if (!(options.noise_rate >= 0.0 && options.noise_rate <= 1.0)) throw ConfigError("--noise-rate must lie in [0, 1]");
  const auto clean = generate(config);
  // Separate stream for the flips so changing the rate never reshuffles rows.
  const auto [noisy, injection] = inject_noise(clean, options.noise_rate, config.seed + 1);
  std::ostringstream csv;
  write_dataset_csv(csv, noisy);
  write_file(options.out, csv.str());
  if (!options.truth.empty()) write_file(options.truth, to_json(injection).dump(2) + "\n");
  log.info("generated {} rows, flipped {}", noisy.size(), injection.flipped_ids.size());
  out << noisy.size() << " rows, " << injection.flipped_ids.size() << " labels flipped\n";
  return kSuccess;
}

void add_input_flags(CLI::App& command, Options& options) {
  command.add_option("--input", options.input, "Dataset CSV (or raw call log with --raw)")->required();
  command.add_option("--out", options.out, "Write the result here instead of standard output");
  command.add_option("--format", options.format, "Output format: json or markdown");
  command.add_option("--smoothing", options.smoothing, "none, laplace-on-zero or laplace-always");
  command.add_option("--smoothing-k", options.smoothing_k, "Laplace k");
  command.add_option("--score", options.score, "Score compared to the noise threshold: likelihood or posterior");
  command.add_flag("--raw", options.raw, "Input is a raw call log");
  command.add_option("--segments", options.segments, "Time segmentation JSON for --raw input");
}

void add_tree_flags(CLI::App& command, Options& options) {
  command.add_option("--min-split", options.min_split, "Smallest subset the tree may split");
  command.add_option("--criterion", options.criterion, "gain-ratio or info-gain");
}

void add_cv_flags(CLI::App& command, Options& options) {
  command.add_option("--folds", options.folds, "Number of cross-validation folds");
  command.add_option("--seed", options.seed, "Fold assignment seed");
  command.add_option("--filter-scope", options.filter_scope, "per-fold or global");
  command.add_option("--averaging", options.averaging, "weighted, macro or micro");
  command.add_flag("--no-stratify", options.no_stratify, "Plain random folds");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto logger = make_logger(err);
  Options options;

  CLI::App app{"Naive-Bayes noise filtering and decision-tree evaluation for categorical data", "noise_sieve"};
  app.require_subcommand(1);

  auto* ingest = app.add_subcommand("ingest", "Convert a raw call log into a dataset CSV");
  ingest->add_option("--input", options.input, "Raw call-log CSV")->required();
  ingest->add_option("--segments", options.segments, "Time segmentation JSON");
  ingest->add_option("--out", options.out, "Dataset CSV to write")->required();

  auto* detect_cmd = app.add_subcommand("detect", "Report noisy instances");
  add_input_flags(*detect_cmd, options);
  detect_cmd->add_option("--method", options.method, "dynamic or baseline");
  detect_cmd->add_option("--seed", options.seed, "Unused; accepted for uniformity");

  auto* train = app.add_subcommand("train", "Filter noise and fit a decision tree");
  add_input_flags(*train, options);
  add_tree_flags(*train, options);
  train->add_option("--filter", options.filter, "none, baseline or dynamic");
  train->add_option("--seed", options.seed, "Unused; accepted for uniformity");

  auto* evaluate = app.add_subcommand("evaluate", "Cross-validate one filtering method");
  add_input_flags(*evaluate, options);
  add_tree_flags(*evaluate, options);
  add_cv_flags(*evaluate, options);
  evaluate->add_option("--filter", options.filter, "none, baseline or dynamic");

  auto* compare_cmd = app.add_subcommand("compare", "Cross-validate no filter, baseline and dynamic on shared folds");
  add_input_flags(*compare_cmd, options);
  add_tree_flags(*compare_cmd, options);
  add_cv_flags(*compare_cmd, options);
  compare_cmd->add_option("--markdown-out", options.markdown_out, "Also write the Markdown table here");

  auto* synth = app.add_subcommand("synth", "Generate a rule-labelled dataset with injected label noise");
  synth->add_option("--config", options.config, "Generator config JSON")->required();
  synth->add_option("--noise-rate", options.noise_rate, "Fraction of labels to flip");
  synth->add_option("--seed", options.synth_seed, "Overrides the config seed");
  synth->add_option("--out", options.out, "Dataset CSV to write")->required();
  synth->add_option("--truth", options.truth, "Injection truth JSON to write");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& error) {
    err << "error: " << error.what() << '\n';
    if (auto* selected = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << "run '" << selected->get_name() << " --help' for usage\n";
    }
    return kUserError;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(options, out, *logger);
    if (detect_cmd->parsed()) return cmd_detect(options, out, *logger);
    if (train->parsed()) return cmd_train(options, out, *logger);
    if (evaluate->parsed()) return cmd_evaluate(options, out, *logger);
    if (compare_cmd->parsed()) return cmd_compare(options, out, *logger);
    if (synth->parsed()) return cmd_synth(options, out, *logger);
  } catch (const InputError& error) {
    err << "error: " << error.what() << '\n';
    return kUserError;
  } catch (const std::exception& error) {
    err << "internal error: " << error.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace noise_sieve::cli
