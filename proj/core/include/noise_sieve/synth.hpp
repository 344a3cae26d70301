// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "noise_sieve/dataset.hpp"
#include "noise_sieve/metrics.hpp"
#include "noise_sieve/noise_filter.hpp"

namespace noise_sieve {

struct GeneratedAttribute {
  std::string name;
  std::vector<std::string> values;
};

struct LabelRule {
  // Conjunction of attribute == value tests; empty matches everything.
  std::vector<std::pair<std::string, std::string>> match;
  std::string label;
};

/// Uniform attribute sampling labelled by a first-match rule table with a
/// catch-all default label.
struct GeneratorConfig {
  std::vector<GeneratedAttribute> attributes;
  std::vector<LabelRule> rules;
  std::string default_label;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string class_attribute = "Behavior";
  // Extra class labels beyond those named by the rules; optional.
  std::vector<std::string> extra_labels;

  /// Throws ConfigError if the rule table is unusable.
  void validate() const;
  /// Rule labels, then the default, then extras; first occurrence wins.
  std::vector<std::string> class_labels() const;
  /// The label the rule table assigns to `values` (ordered as attributes).
  const std::string& label_for(const std::vector<std::string>& values) const;
};

/// {attributes: [{name, values}], rules: [{match: {attr: value}, label}],
///  default_label, n, seed}; optional class_attribute and labels.
GeneratorConfig generator_config_from_json(const nlohmann::json& config);
GeneratorConfig generator_config_from_file(const std::string& path);
nlohmann::json to_json(const GeneratorConfig& config);

/// Rows with ids 1..n. Attribute value sets are declared in the schema.
Dataset generate(const GeneratorConfig& config);

struct NoiseInjection {
  double rate = 0.0;
  std::uint64_t seed = 0;
  std::set<RowId> flipped_ids;
  std::map<RowId, std::string> original_labels;
  std::vector<RowId> row_ids;  // ids of the dataset the injection applies to
};

/// Flips exactly floor(rate * N) distinct rows to a uniformly chosen other
/// label. Throws std::invalid_argument on a rate outside [0, 1] and
/// ConfigError when rate > 0 with fewer than two class labels.
std::pair<Dataset, NoiseInjection> inject_noise(const Dataset& dataset, double rate, std::uint64_t seed);

// {rate, seed, flipped_ids, original_labels: {"id": label}}
nlohmann::json to_json(const NoiseInjection& injection);

/// Detection precision/recall/F of `report` against the injected flips.
/// Throws std::invalid_argument if the two describe different row sets.
PrecisionRecallF evaluate_detection(const NoiseReport& report, const NoiseInjection& injection);

}  // namespace noise_sieve
