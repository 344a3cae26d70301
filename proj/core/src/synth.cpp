// Apache License, Version 2.0, refer to LICENSE.txt

#include "noise_sieve/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "noise_sieve/error.hpp"
#include "noise_sieve/random.hpp"

namespace noise_sieve {

void GeneratorConfig::validate() const {
  if (attributes.empty()) throw ConfigError("generator needs at least one attribute");
  if (n < 1) throw ConfigError("generator row count must be >= 1");
  if (default_label.empty()) throw ConfigError("generator needs a catch-all default_label");
  std::set<std::string> names;
  for (const auto& attribute : attributes) {
    if (attribute.name.empty()) throw ConfigError("attribute name must not be empty");
    if (!names.insert(attribute.name).second) throw ConfigError("duplicate attribute '" + attribute.name + "'");
    if (attribute.values.empty()) throw ConfigError("attribute '" + attribute.name + "' has no values");
    std::set<std::string> seen;
    for (const auto& value : attribute.values) {
      if (value.empty()) throw ConfigError("attribute '" + attribute.name + "' has an empty value");
      if (!seen.insert(value).second) {
        throw ConfigError("attribute '" + attribute.name + "' repeats value '" + value + "'");
      }
    }
  }
  if (names.contains(class_attribute)) throw ConfigError("class attribute shadows a feature attribute");
  for (std::size_t r = 0; r < rules.size(); ++r) {
    if (rules[r].label.empty()) throw ConfigError("rule " + std::to_string(r) + " has no label");
    for (const auto& [name, value] : rules[r].match) {
      auto it = std::find_if(attributes.begin(), attributes.end(), [&](const auto& a) { return a.name == name; });
      if (it == attributes.end()) {
        throw ConfigError("rule " + std::to_string(r) + " tests unknown attribute '" + name + "'");
      }
      if (std::find(it->values.begin(), it->values.end(), value) == it->values.end()) {
        throw ConfigError("rule " + std::to_string(r) + " tests '" + name + "' against undeclared value '" + value +
                          "'");
      }
    }
  }
}

std::vector<std::string> GeneratorConfig::class_labels() const {
  std::vector<std::string> labels;
  auto add = [&](const std::string& label) {
    if (std::find(labels.begin(), labels.end(), label) == labels.end()) labels.push_back(label);
  };
  for (const auto& rule : rules) add(rule.label);
  add(default_label);
  for (const auto& label : extra_labels) add(label);
  return labels;
}

const std::string& GeneratorConfig::label_for(const std::vector<std::string>& values) const {
  for (const auto& rule : rules) {
    const bool matches = std::all_of(rule.match.begin(), rule.match.end(), [&](const auto& test) {
      for (std::size_t a = 0; a < attributes.size(); ++a) {
        if (attributes[a].name == test.first) return values.at(a) == test.second;
      }
      return false;
    });
    if (matches) return rule.label;
  }
  return default_label;
}

GeneratorConfig generator_config_from_json(const nlohmann::json& config) {
  GeneratorConfig out;
  try {
    for (const auto& attribute : config.at("attributes")) {
      out.attributes.push_back(
          {attribute.at("name").get<std::string>(), attribute.at("values").get<std::vector<std::string>>()});
    }
    for (const auto& rule : config.value("rules", nlohmann::json::array())) {
      LabelRule parsed;
      for (const auto& [name, value] : rule.at("match").items()) parsed.match.emplace_back(name, value.get<std::string>());
      parsed.label = rule.at("label").get<std::string>();
      out.rules.push_back(std::move(parsed));
    }
    out.default_label = config.at("default_label").get<std::string>();
    out.n = config.at("n").get<std::size_t>();
    out.seed = config.value("seed", std::uint64_t{0});
    out.class_attribute = config.value("class_attribute", std::string("Behavior"));
    out.extra_labels = config.value("labels", std::vector<std::string>{});
  } catch (const nlohmann::json::exception& error) {
    throw ConfigError(std::string("invalid generator config: ") + error.what());
  }
  out.validate();
  return out;
}

GeneratorConfig generator_config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open generator config '" + path + "'");
  try {
    return generator_config_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& error) {
    throw ConfigError(path + ": " + error.what());
  }
}

nlohmann::json to_json(const GeneratorConfig& config) {
  nlohmann::json attributes = nlohmann::json::array();
  for (const auto& attribute : config.attributes) {
    attributes.push_back({{"name", attribute.name}, {"values", attribute.values}});
  }
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& rule : config.rules) {
    nlohmann::json match = nlohmann::json::object();
    for (const auto& [name, value] : rule.match) match[name] = value;
    rules.push_back({{"match", std::move(match)}, {"label", rule.label}});
  }
  return {{"attributes", std::move(attributes)}, {"rules", std::move(rules)}, {"default_label", config.default_label},
          {"n", config.n},  {"seed", config.seed},  {"class_attribute", config.class_attribute},
          {"labels", config.extra_labels}};
}

Dataset generate(const GeneratorConfig& config) {
  config.validate();
  std::vector<AttributeSpec> specs;
  for (const auto& attribute : config.attributes) {
    specs.push_back({attribute.name, std::set<std::string>(attribute.values.begin(), attribute.values.end())});
  }
  AttributeSchema schema(std::move(specs), config.class_attribute, config.class_labels());

  Rng rng(config.seed);
  std::vector<RowInput> rows;
  rows.reserve(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    std::vector<std::string> values;
    values.reserve(config.attributes.size());
    for (const auto& attribute : config.attributes) {
      values.push_back(attribute.values[rng.uniform_index(attribute.values.size())]);
    }
    std::string label = config.label_for(values);
    rows.push_back({i + 1, std::move(values), std::move(label)});
  }
  return validate_dataset(std::move(schema), std::move(rows));
}

std::pair<Dataset, NoiseInjection> inject_noise(const Dataset& dataset, double rate, std::uint64_t seed) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("noise rate must lie in [0, 1]");
  const auto& labels = dataset.schema().class_labels();
  if (rate > 0.0 && labels.size() < 2) throw ConfigError("label noise needs at least two class labels");

  NoiseInjection injection;
  injection.rate = rate;
  injection.seed = seed;
  for (const auto& row : dataset.rows()) injection.row_ids.push_back(row.id);

  // The small slack keeps products such as 0.29 * 100 from flooring to 28.
  const auto flips = static_cast<std::size_t>(std::floor(rate * static_cast<double>(dataset.size()) + 1e-9));

  Rng rng(seed);
  std::vector<std::size_t> positions(dataset.size());
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  rng.shuffle(std::span(positions));
  positions.resize(std::min(flips, positions.size()));
  std::sort(positions.begin(), positions.end());

  std::vector<LabeledInstance> rows = dataset.rows();
  for (std::size_t position : positions) {
    auto& row = rows[position];
    const std::size_t original = dataset.schema().label_index(row.label);
    std::size_t replacement = rng.uniform_index(labels.size() - 1);
    if (replacement >= original) ++replacement;
    injection.flipped_ids.insert(row.id);
    injection.original_labels.emplace(row.id, row.label);
    row.label = labels[replacement];
  }
  return {validate_dataset(dataset.schema(), std::move(rows)), std::move(injection)};
}

nlohmann::json to_json(const NoiseInjection& injection) {
  nlohmann::json originals = nlohmann::json::object();
  for (const auto& [id, label] : injection.original_labels) originals[std::to_string(id)] = label;
  return {{"rate", injection.rate},
          {"seed", injection.seed},
          {"flipped_ids", injection.flipped_ids},
          {"original_labels", std::move(originals)}};
}

PrecisionRecallF evaluate_detection(const NoiseReport& report, const NoiseInjection& injection) {
  std::set<RowId> reported;
  for (const auto& entry : report.partition.pure) reported.insert(entry.id);
  for (const auto& entry : report.partition.mis) reported.insert(entry.id);
  const std::set<RowId> injected(injection.row_ids.begin(), injection.row_ids.end());
  if (reported != injected) throw std::invalid_argument("noise report and injection cover different rows");

  std::size_t tp = 0;
  for (RowId id : report.noise_ids) tp += injection.flipped_ids.contains(id) ? 1 : 0;
  const std::size_t fp = report.noise_ids.size() - tp;
  const std::size_t fn = injection.flipped_ids.size() - tp;
  return prf_from_counts(tp, fp, fn);
}

}  // namespace noise_sieve
