// Apache License, Version 2.0, refer to LICENSE.txt

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "noise_sieve/error.hpp"
#include "noise_sieve/noise_filter.hpp"
#include "noise_sieve/random.hpp"
#include "noise_sieve/synth.hpp"
#include "oracle.hpp"

namespace noise_sieve {
namespace {

std::set<RowId> ids_of(const std::vector<RowId>& ids) { return {ids.begin(), ids.end()}; }

std::set<RowId> pure_ids(const ClassificationPartition& partition) {
  std::set<RowId> ids;
  for (const auto& entry : partition.pure) ids.insert(entry.id);
  return ids;
}

std::set<RowId> mis_ids(const ClassificationPartition& partition) {
  std::set<RowId> ids;
  for (const auto& entry : partition.mis) ids.insert(entry.id);
  return ids;
}

Dataset self_consistent() {
  AttributeSchema schema({{"Location", std::nullopt}, {"Relationship", std::nullopt}}, "Behavior",
                         {"Reject", "Accept"});
  std::vector<RowInput> rows(4, RowInput{std::nullopt, {"Office", "Boss"}, "Accept"});
  return validate_dataset(schema, rows);
}

TEST(PartitionTest, CallSampleSplitsIntoSevenPureAndTwoMisclassified) {
  const auto data = testing::call_sample();
  const auto partition = partition_by_classification(NaiveBayesModel::fit(data), data);
  EXPECT_EQ(pure_ids(partition), (std::set<RowId>{1, 2, 4, 5, 6, 7, 9}));
  EXPECT_EQ(mis_ids(partition), (std::set<RowId>{3, 8}));
  const auto row8 = std::find_if(partition.mis.begin(), partition.mis.end(), [](auto& e) { return e.id == 8; });
  ASSERT_NE(row8, partition.mis.end());
  EXPECT_NEAR(row8->likelihood, 1.0 / 126.0, 1e-15);  // ~7.937e-3
  EXPECT_EQ(row8->predicted, "Reject");
  EXPECT_EQ(row8->actual, "Accept");
}

TEST(PartitionTest, StoredLikelihoodsOfPureRows) {
  const auto data = testing::call_sample();
  const auto partition = partition_by_classification(NaiveBayesModel::fit(data), data);
  const std::map<RowId, double> expected{{1, 0.144},       {2, 2.0 / 35.0}, {4, 0.144},        {5, 1.0 / 84.0},
                                         {6, 0.032},       {7, 9.0 / 280.0}, {9, 1.0 / 84.0}};
  for (const auto& entry : partition.pure) EXPECT_NEAR(entry.likelihood, expected.at(entry.id), 1e-15);
  for (const auto& entry : partition.pure) {
    EXPECT_GT(entry.likelihood, 0.0);
    EXPECT_LE(entry.likelihood, 1.0);
  }
}

TEST(PartitionTest, PosteriorScoreKindWeighsByPrior) {
  const auto data = testing::call_sample();
  DetectionOptions options;
  options.score = ScoreKind::posterior;
  const auto partition = partition_by_classification(NaiveBayesModel::fit(data), data, options);
  const auto row3 = std::find_if(partition.mis.begin(), partition.mis.end(), [](auto& e) { return e.id == 3; });
  ASSERT_NE(row3, partition.mis.end());
  EXPECT_NEAR(row3->likelihood, 2.0 / 567.0, 1e-15);
}

TEST(PartitionTest, SchemaMismatchThrows) {
  const auto data = testing::call_sample();
  EXPECT_THROW(partition_by_classification(NaiveBayesModel::fit(self_consistent()), data), SchemaError);
}

TEST(PartitionTest, IdenticalRowsOneLabelAreAllPure) {
  const auto data = self_consistent();
  const auto partition = partition_by_classification(NaiveBayesModel::fit(data), data);
  EXPECT_EQ(partition.pure.size(), 4u);
  EXPECT_TRUE(partition.mis.empty());
}

TEST(ThresholdTest, MinimumOverPureRows) {
  const auto data = testing::call_sample();
  const auto partition = partition_by_classification(NaiveBayesModel::fit(data), data);
  EXPECT_NEAR(compute_threshold(partition), 1.0 / 84.0, 1e-15);

  ClassificationPartition single{{{5, 0.25}}, {}};
  EXPECT_EQ(compute_threshold(single), 0.25);
  EXPECT_THROW(compute_threshold(ClassificationPartition{}), std::domain_error);
}

TEST(GroupTest, OneGroupPerDistinctLikelihoodLargestFirst) {
  ClassificationPartition partition;
  for (RowId id = 1; id <= 5; ++id) partition.pure.push_back({id, 0.5});
  for (RowId id = 6; id <= 8; ++id) partition.pure.push_back({id, 0.25});
  for (RowId id = 9; id <= 11; ++id) partition.pure.push_back({id, 0.125});
  const auto groups = group_pure_likelihoods(partition);
  ASSERT_EQ(groups.size(), 3u);
  EXPECT_EQ(groups[0].member_ids.size(), 5u);
  EXPECT_EQ(groups[1].member_ids.size(), 3u);
  EXPECT_EQ(groups[2].member_ids.size(), 3u);
  EXPECT_TRUE(group_pure_likelihoods(ClassificationPartition{}).empty());
}

TEST(GroupTest, CallSamplePureGroups) {
  const auto data = testing::call_sample();
  const auto groups = group_pure_likelihoods(partition_by_classification(NaiveBayesModel::fit(data), data));
  ASSERT_EQ(groups.size(), 5u);
  EXPECT_NEAR(groups[0].probability, 0.144, 1e-15);
  EXPECT_EQ(groups[0].member_ids, (std::vector<RowId>{1, 4}));
  EXPECT_NEAR(groups[1].probability, 2.0 / 35.0, 1e-15);
  EXPECT_EQ(groups[1].member_ids, (std::vector<RowId>{2}));
  EXPECT_NEAR(groups[2].probability, 9.0 / 280.0, 1e-15);
  EXPECT_EQ(groups[2].member_ids, (std::vector<RowId>{7}));
  EXPECT_NEAR(groups[3].probability, 0.032, 1e-15);
  EXPECT_EQ(groups[3].member_ids, (std::vector<RowId>{6}));
  EXPECT_NEAR(groups[4].probability, 1.0 / 84.0, 1e-15);
  EXPECT_EQ(groups[4].member_ids, (std::vector<RowId>{5, 9}));
}

TEST(DetectNoiseTest, CallSampleDynamicAndBaseline) {
  const auto data = testing::call_sample();
  const auto dynamic = detect_noise(data);
  EXPECT_EQ(dynamic.method, DetectionMethod::dynamic_threshold);
  ASSERT_TRUE(dynamic.threshold.has_value());
  EXPECT_NEAR(*dynamic.threshold, 1.0 / 84.0, 1e-15);
  EXPECT_EQ(ids_of(dynamic.noise_ids), (std::set<RowId>{3, 8}));
  EXPECT_FALSE(dynamic.warning.has_value());

  const auto baseline = detect_noise_baseline(data);
  EXPECT_EQ(baseline.method, DetectionMethod::all_misclassified);
  EXPECT_FALSE(baseline.threshold.has_value());
  EXPECT_EQ(ids_of(baseline.noise_ids), (std::set<RowId>{3, 8}));
}

TEST(DetectNoiseTest, SelfConsistentDataHasNoNoise) {
  EXPECT_TRUE(detect_noise(self_consistent()).noise_ids.empty());
  EXPECT_TRUE(detect_noise_baseline(self_consistent()).noise_ids.empty());
}

TEST(DetectNoiseTest, MisclassifiedRowsAtOrAboveThresholdSurvive) {
  // Two value patterns; "Accept" rows at pattern x are outvoted by "Reject"
  // but fit their own class better than the weakest pure row does.
  AttributeSchema schema({{"A", std::nullopt}, {"B", std::nullopt}}, "C", {"Reject", "Accept"});
  std::vector<RowInput> rows;
  for (int i = 0; i < 6; ++i) rows.push_back({std::nullopt, {"x", "p"}, "Reject"});
  for (int i = 0; i < 2; ++i) rows.push_back({std::nullopt, {"x", "p"}, "Accept"});
  rows.push_back({std::nullopt, {"y", "q"}, "Accept"});
  rows.push_back({std::nullopt, {"y", "p"}, "Accept"});
  rows.push_back({std::nullopt, {"x", "q"}, "Accept"});
  const auto data = validate_dataset(schema, rows);

  const auto oracle = testing::oracle_detect(data);
  const auto report = detect_noise(data);
  ASSERT_FALSE(report.partition.mis.empty());
  ASSERT_TRUE(report.threshold.has_value());
  for (const auto& entry : report.partition.mis) EXPECT_GE(entry.likelihood, *report.threshold);
  EXPECT_TRUE(report.noise_ids.empty());
  EXPECT_TRUE(oracle.dynamic_noise.empty());
  EXPECT_FALSE(oracle.baseline_noise.empty());
  EXPECT_EQ(ids_of(detect_noise_baseline(data).noise_ids), oracle.baseline_noise);
}

TEST(DetectNoiseTest, NoPureRowsFlagsNothingAndWarns) {
  ClassificationPartition none_pure{{}, {{1, 0.1, "P", "Q"}, {2, 0.2, "Q", "P"}}};
  const auto dynamic = flag_noise(none_pure, DetectionMethod::dynamic_threshold);
  EXPECT_FALSE(dynamic.threshold.has_value());
  EXPECT_TRUE(dynamic.noise_ids.empty());
  EXPECT_TRUE(dynamic.warning.has_value());
  EXPECT_TRUE(to_json(dynamic)["threshold"].is_null());

  const auto baseline = flag_noise(none_pure, DetectionMethod::all_misclassified);
  EXPECT_EQ(baseline.noise_ids, (std::vector<RowId>{1, 2}));
}

TEST(DetectNoiseTest, EmptyDatasetIsRejected) {
  const auto data = testing::call_sample();
  EXPECT_THROW(detect_noise(data.without({1, 2, 3, 4, 5, 6, 7, 8, 9})), EmptyDatasetError);
}

TEST(FilterDatasetTest, RemovesReportedRows) {
  const auto data = testing::call_sample();
  const auto filtered = filter_dataset(data, detect_noise(data));
  EXPECT_EQ(filtered.size(), 7u);
  NoiseReport empty;
  EXPECT_EQ(filter_dataset(data, empty), data);
  NoiseReport everything;
  for (const auto& row : data.rows()) everything.noise_ids.push_back(row.id);
  EXPECT_TRUE(filter_dataset(data, everything).empty());
  NoiseReport bogus;
  bogus.noise_ids = {42};
  EXPECT_THROW(filter_dataset(data, bogus), UnknownNameError);
}

TEST(NoiseReportJsonTest, FieldNames) {
  const auto json = to_json(detect_noise(testing::call_sample()));
  for (const char* key : {"method", "threshold", "noise_ids", "pure_groups", "mis"}) EXPECT_TRUE(json.contains(key));
  EXPECT_EQ(json["method"], "dynamic-threshold");
  EXPECT_EQ(json["noise_ids"], nlohmann::json({3, 8}));
  EXPECT_EQ(json["pure_groups"][0]["ids"], nlohmann::json({1, 4}));
  EXPECT_EQ(json["mis"][0]["actual"], "Accept");
  EXPECT_EQ(json["mis"][0]["predicted"], "Reject");
  EXPECT_TRUE(json["mis"][0].contains("likelihood"));
  EXPECT_TRUE(to_json(detect_noise_baseline(testing::call_sample()))["threshold"].is_null());
}

class DetectionPropertyTest : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(DetectionPropertyTest, InvariantsOnNoisySyntheticData) {
  const std::uint64_t seed = GetParam();
  const auto config = testing::random_generator(seed, 20, 200);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const double rate = 0.3 * rng.uniform_real();
  const auto [data, injection] = inject_noise(generate(config), rate, seed + 17);

  const auto dynamic = detect_noise(data);
  const auto baseline = detect_noise_baseline(data);
  const auto dynamic_ids = ids_of(dynamic.noise_ids);
  const auto baseline_ids = ids_of(baseline.noise_ids);

  EXPECT_TRUE(std::includes(baseline_ids.begin(), baseline_ids.end(), dynamic_ids.begin(), dynamic_ids.end()));
  EXPECT_EQ(baseline_ids, mis_ids(baseline.partition));

  const auto pure = pure_ids(dynamic.partition);
  const auto mis = mis_ids(dynamic.partition);
  EXPECT_EQ(pure.size() + mis.size(), data.size());
  for (RowId id : dynamic_ids) EXPECT_FALSE(pure.contains(id));

  if (dynamic.threshold) {
    // Independent scan for the minimum.
    double minimum = INFINITY;
    for (const auto& entry : dynamic.partition.pure) minimum = std::min(minimum, entry.likelihood);
    EXPECT_EQ(*dynamic.threshold, minimum);
    for (const auto& entry : dynamic.partition.mis) {
      EXPECT_EQ(dynamic_ids.contains(entry.id), entry.likelihood < *dynamic.threshold);
    }
  } else {
    EXPECT_TRUE(dynamic_ids.empty());
  }

  // Row order does not matter.
  auto rows = data.rows();
  Rng shuffle(seed + 99);
  shuffle.shuffle(std::span(rows));
  const auto permuted = detect_noise(validate_dataset(data.schema(), rows));
  EXPECT_EQ(ids_of(permuted.noise_ids), dynamic_ids);
  EXPECT_EQ(permuted.threshold, dynamic.threshold);

  // Brute-force agreement where exact ties cannot be split by rounding.
  const auto oracle = testing::oracle_detect(data);
  if (!oracle.ambiguous) {
    EXPECT_EQ(oracle.dynamic_noise, dynamic_ids);
    EXPECT_EQ(oracle.baseline_noise, baseline_ids);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, DetectionPropertyTest, ::testing::Range<std::uint64_t>(1, 201));

// Re-partitioning after filtering is expected, not guaranteed, to keep at
// least as many pure rows. Counted and reported; never fails.
TEST(DetectionMeasurementTest, PureCountAfterFiltering) {
  std::size_t runs = 0, lower = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const auto data = inject_noise(generate(testing::random_generator(seed, 20, 300)), 0.2, seed).first;
    const auto report = detect_noise(data);
    if (report.noise_ids.empty() || report.noise_ids.size() == data.size()) continue;
    const auto filtered = filter_dataset(data, report);
    const auto rerun = partition_by_classification(NaiveBayesModel::fit(filtered), filtered);
    ++runs;
    lower += rerun.pure.size() < report.partition.pure.size() ? 1 : 0;
  }
  RecordProperty("runs", static_cast<int>(runs));
  RecordProperty("fewer_pure_after_filtering", static_cast<int>(lower));
  std::printf("pure-count monotonicity: %zu of %zu filtered runs lost pure rows\n", lower, runs);
  EXPECT_GT(runs, 0u);
}

}  // namespace
}  // namespace noise_sieve
