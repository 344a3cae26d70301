// Apache License, Version 2.0, refer to LICENSE.txt

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "noise_sieve/error.hpp"
#include "noise_sieve/synth.hpp"

namespace noise_sieve {
namespace {

GeneratorConfig boss_config(std::size_t n, std::uint64_t seed) {
  GeneratorConfig config;
  config.attributes = {{"Relationship", {"Boss", "Friend", "Family"}}, {"Location", {"Office", "Home"}}};
  config.rules = {{{{"Relationship", "Boss"}}, "Accept"}};
  config.default_label = "Reject";
  config.n = n;
  config.seed = seed;
  return config;
}

TEST(GenerateTest, FollowsRuleTable) {
  const auto data = generate(boss_config(100, 1));
  ASSERT_EQ(data.size(), 100u);
  EXPECT_EQ(data.row(0).id, 1u);
  EXPECT_EQ(data.row(99).id, 100u);
  for (const auto& row : data.rows()) {
    EXPECT_EQ(row.label, row.instance.values[0] == "Boss" ? "Accept" : "Reject");
  }
  EXPECT_EQ(data.schema().class_labels(), (std::vector<std::string>{"Accept", "Reject"}));
  EXPECT_TRUE(data.schema().attributes()[0].declared_values->contains("Family"));
}

TEST(GenerateTest, FirstMatchingRuleWins) {
  const auto config = testing::call_behavior_generator(10, 1);
  // Boss precedes the Meeting rule.
  EXPECT_EQ(config.label_for({"Mon[S1]", "Office", "Meeting", "Boss"}), "Accept");
  EXPECT_EQ(config.label_for({"Mon[S1]", "Office", "Meeting", "Friend"}), "Reject");
  EXPECT_EQ(config.label_for({"Mon[S1]", "Home", "Free", "Unknown"}), "Accept");
}

TEST(GenerateTest, SingleRowAndDeterminism) {
  EXPECT_EQ(generate(boss_config(1, 3)).size(), 1u);
  EXPECT_EQ(generate(boss_config(50, 3)).rows(), generate(boss_config(50, 3)).rows());
  EXPECT_NE(generate(boss_config(50, 3)).rows(), generate(boss_config(50, 4)).rows());
}

TEST(GenerateTest, RejectsUnusableConfigs) {
  auto config = boss_config(0, 1);
  EXPECT_THROW(generate(config), ConfigError);
  config = boss_config(10, 1);
  config.rules[0].match[0].first = "Weather";
  EXPECT_THROW(config.validate(), ConfigError);
  config = boss_config(10, 1);
  config.rules[0].match[0].second = "Stranger";
  EXPECT_THROW(config.validate(), ConfigError);
  config = boss_config(10, 1);
  config.attributes[1].values.clear();
  EXPECT_THROW(config.validate(), ConfigError);
}

TEST(GeneratorConfigTest, JsonRoundTrip) {
  const auto config = testing::call_behavior_generator(500, 7);
  const auto copy = generator_config_from_json(to_json(config));
  EXPECT_EQ(generate(copy).rows(), generate(config).rows());
  EXPECT_THROW(generator_config_from_json(nlohmann::json{{"n", 5}}), ConfigError);
}

TEST(InjectNoiseTest, ZeroRateIsIdentity) {
  const auto data = generate(boss_config(100, 2));
  const auto [noisy, injection] = inject_noise(data, 0.0, 5);
  EXPECT_EQ(noisy.rows(), data.rows());
  EXPECT_TRUE(injection.flipped_ids.empty());
}

TEST(InjectNoiseTest, FlipsExactlyTheRequestedRows) {
  const auto data = generate(testing::call_behavior_generator(500, 7));
  const auto [noisy, injection] = inject_noise(data, 0.1, 8);
  EXPECT_EQ(injection.flipped_ids.size(), 50u);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& before = data.row(i);
    const auto& after = noisy.row(i);
    EXPECT_EQ(before.id, after.id);
    EXPECT_EQ(before.instance, after.instance);
    if (injection.flipped_ids.contains(before.id)) {
      EXPECT_NE(after.label, before.label);
      EXPECT_EQ(injection.original_labels.at(before.id), before.label);
    } else {
      EXPECT_EQ(after.label, before.label);
    }
  }
  const auto again = inject_noise(data, 0.1, 8);
  EXPECT_EQ(again.second.flipped_ids, injection.flipped_ids);
}

TEST(InjectNoiseTest, Errors) {
  auto single = boss_config(20, 1);
  single.rules.clear();
  const auto data = generate(single);
  EXPECT_THROW(inject_noise(data, 0.1, 1), ConfigError);
  EXPECT_NO_THROW(inject_noise(data, 0.0, 1));
  EXPECT_THROW(inject_noise(generate(boss_config(20, 1)), 1.5, 1), std::invalid_argument);
  EXPECT_THROW(inject_noise(generate(boss_config(20, 1)), -0.1, 1), std::invalid_argument);
}

TEST(EvaluateDetectionTest, CountsAgainstTruth) {
  const auto [noisy, injection] = inject_noise(generate(testing::call_behavior_generator(300, 3)), 0.1, 4);
  auto report = detect_noise(noisy);

  // Independent recount.
  std::size_t hits = 0;
  for (RowId id : report.noise_ids) hits += injection.flipped_ids.contains(id) ? 1 : 0;
  const auto prf = evaluate_detection(report, injection);
  const double precision = report.noise_ids.empty() ? 0.0 : double(hits) / double(report.noise_ids.size());
  EXPECT_DOUBLE_EQ(prf.precision, precision);
  EXPECT_DOUBLE_EQ(prf.recall, double(hits) / double(injection.flipped_ids.size()));

  report.noise_ids.assign(injection.flipped_ids.begin(), injection.flipped_ids.end());
  const auto perfect = evaluate_detection(report, injection);
  EXPECT_DOUBLE_EQ(perfect.precision, 1.0);
  EXPECT_DOUBLE_EQ(perfect.recall, 1.0);

  report.noise_ids.clear();
  EXPECT_EQ(evaluate_detection(report, injection).f_measure, 0.0);

  report.partition.pure.pop_back();
  EXPECT_THROW(evaluate_detection(report, injection), std::invalid_argument);
}

}  // namespace
}  // namespace noise_sieve
