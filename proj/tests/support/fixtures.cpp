// Apache License, Version 2.0, refer to LICENSE.txt

#include "fixtures.hpp"

#include "noise_sieve/dataset_csv.hpp"
#include "noise_sieve/random.hpp"

#ifndef NOISE_SIEVE_TEST_DATA_DIR
#error "NOISE_SIEVE_TEST_DATA_DIR must be defined"
#endif

namespace noise_sieve::testing {

std::string data_path(const std::string& name) { return std::string(NOISE_SIEVE_TEST_DATA_DIR) + "/" + name; }

Dataset call_sample() { return read_dataset_csv_file(data_path("call_sample.csv")); }

GeneratorConfig call_behavior_generator(std::size_t n, std::uint64_t seed) {
  auto config = generator_config_from_file(data_path("call_behavior_generator.json"));
  config.n = n;
  config.seed = seed;
  return config;
}

GeneratorConfig random_generator(std::uint64_t seed, std::size_t min_rows, std::size_t max_rows) {
  Rng rng(seed);
  GeneratorConfig config;
  const std::size_t attributes = 2 + rng.uniform_index(4);
  for (std::size_t a = 0; a < attributes; ++a) {
    GeneratedAttribute attribute{"A" + std::to_string(a), {}};
    const std::size_t values = 2 + rng.uniform_index(5);
    for (std::size_t v = 0; v < values; ++v) attribute.values.push_back("v" + std::to_string(v));
    config.attributes.push_back(std::move(attribute));
  }
  const std::size_t labels = 2 + rng.uniform_index(3);
  auto label = [&] { return "L" + std::to_string(rng.uniform_index(labels)); };
  const std::size_t rules = 1 + rng.uniform_index(5);
  for (std::size_t r = 0; r < rules; ++r) {
    LabelRule rule;
    const auto& attribute = config.attributes[rng.uniform_index(attributes)];
    rule.match.emplace_back(attribute.name, attribute.values[rng.uniform_index(attribute.values.size())]);
    if (rng.uniform_index(2) == 0) {
      const auto& second = config.attributes[rng.uniform_index(attributes)];
      if (second.name != attribute.name) {
        rule.match.emplace_back(second.name, second.values[rng.uniform_index(second.values.size())]);
      }
    }
    rule.label = label();
    config.rules.push_back(std::move(rule));
  }
  config.default_label = label();
  for (std::size_t l = 0; l < labels; ++l) config.extra_labels.push_back("L" + std::to_string(l));
  config.n = min_rows + rng.uniform_index(max_rows - min_rows + 1);
  config.seed = rng.next();
  return config;
}

}  // namespace noise_sieve::testing
