// Apache License, Version 2.0, refer to LICENSE.txt

#include <algorithm>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "noise_sieve/dataset.hpp"
#include "noise_sieve/dataset_csv.hpp"
#include "noise_sieve/error.hpp"
#include "noise_sieve/random.hpp"

namespace noise_sieve {
namespace {

AttributeSchema two_attribute_schema() {
  return AttributeSchema({{"Location", std::nullopt}, {"Relationship", std::nullopt}}, "Behavior",
                         {"Reject", "Accept"});
}

TEST(AttributeSchemaTest, RejectsDuplicateAndShadowingNames) {
  EXPECT_THROW(AttributeSchema({{"A", {}}, {"A", {}}}, "C", {"x"}), SchemaError);
  EXPECT_THROW(AttributeSchema({{"", {}}}, "C", {"x"}), SchemaError);
  EXPECT_THROW(AttributeSchema({{"C", {}}}, "C", {"x"}), SchemaError);
  EXPECT_THROW(AttributeSchema({{"A", {}}}, "C", {}), SchemaError);
  EXPECT_THROW(AttributeSchema({{"A", {}}}, "C", {"x", "x"}), SchemaError);
}

TEST(AttributeSchemaTest, LookupsThrowOnUnknownNames) {
  const auto schema = two_attribute_schema();
  EXPECT_EQ(schema.attribute_index("Relationship"), 1u);
  EXPECT_EQ(schema.label_index("Accept"), 1u);
  EXPECT_THROW(schema.attribute_index("Situation"), UnknownNameError);
  EXPECT_THROW(schema.label_index("Busy"), UnknownNameError);
}

TEST(ValidateDatasetTest, CallSampleLoadsNineRows) {
  const auto dataset = testing::call_sample();
  EXPECT_EQ(dataset.size(), 9u);
  EXPECT_EQ(dataset.schema().attribute_count(), 4u);
  EXPECT_EQ(dataset.schema().class_labels(), (std::vector<std::string>{"Reject", "Accept"}));
  EXPECT_EQ(dataset.row(0).id, 1u);
  EXPECT_EQ(dataset.row(8).id, 9u);
  // Rows 1 and 4 are the same instance with the same label.
  EXPECT_EQ(dataset.row(0).instance, dataset.row(3).instance);
}

TEST(ValidateDatasetTest, AssignsDenseIdsInInputOrder) {
  std::vector<RowInput> rows{{std::nullopt, {"Office", "Boss"}, "Accept"},
                             {std::nullopt, {"Home", "Friend"}, "Reject"},
                             {std::nullopt, {"Office", "Boss"}, "Accept"}};
  const auto dataset = validate_dataset(two_attribute_schema(), rows);
  ASSERT_EQ(dataset.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(dataset.row(i).id, i);
    EXPECT_EQ(dataset.row(i).instance.values, rows[i].values);
    EXPECT_EQ(dataset.row(i).label, rows[i].label);
  }
}

TEST(ValidateDatasetTest, LabelOutsideSchemaNamesRowAndField) {
  std::vector<RowInput> rows{{std::nullopt, {"Office", "Boss"}, "Accept"}, {std::nullopt, {"Home", "Boss"}, "Busy"}};
  try {
    validate_dataset(two_attribute_schema(), rows);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& error) {
    EXPECT_EQ(error.row(), 1u);
    EXPECT_EQ(error.field(), "Behavior");
  }
}

TEST(ValidateDatasetTest, RejectsEmptyValuesWrongArityAndEmptyInput) {
  EXPECT_THROW(validate_dataset(two_attribute_schema(), std::vector<RowInput>{}), EmptyDatasetError);
  EXPECT_THROW(validate_dataset(two_attribute_schema(), std::vector<RowInput>{{std::nullopt, {"Office"}, "Accept"}}),
               SchemaError);
  try {
    validate_dataset(two_attribute_schema(), std::vector<RowInput>{{std::nullopt, {"Office", ""}, "Accept"}});
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& error) {
    EXPECT_EQ(error.row(), 0u);
    EXPECT_EQ(error.field(), "Relationship");
  }
}

TEST(ValidateDatasetTest, RejectsDuplicateOrPartialIds) {
  EXPECT_THROW(validate_dataset(two_attribute_schema(),
                                std::vector<RowInput>{{4, {"Office", "Boss"}, "Accept"}, {4, {"Home", "Boss"}, "Accept"}}),
               SchemaError);
  EXPECT_THROW(validate_dataset(two_attribute_schema(), std::vector<RowInput>{{4, {"Office", "Boss"}, "Accept"},
                                                                              {std::nullopt, {"Home", "Boss"}, "Accept"}}),
               SchemaError);
}

TEST(DistinctValuesTest, CallSampleAttributes) {
  const auto dataset = testing::call_sample();
  EXPECT_EQ(distinct_values(dataset, "Relationship"),
            (std::set<std::string>{"Friend", "Colleague", "Boss", "Mother", "Unknown"}));
  EXPECT_EQ(distinct_values(dataset, "Location"), (std::set<std::string>{"Office", "Home"}));
  EXPECT_THROW(distinct_values(dataset, "Weather"), UnknownNameError);
}

TEST(DistinctValuesTest, SingleRowAndDeclaredValues) {
  AttributeSchema schema({{"Location", std::set<std::string>{"Office", "Home", "Gym"}}}, "Behavior", {"Accept"});
  const auto dataset = validate_dataset(schema, std::vector<RowInput>{{std::nullopt, {"Office"}, "Accept"}});
  EXPECT_EQ(distinct_values(dataset, "Location").size(), 3u);

  AttributeSchema plain({{"Location", std::nullopt}}, "Behavior", {"Accept"});
  const auto single = validate_dataset(plain, std::vector<RowInput>{{std::nullopt, {"Office"}, "Accept"}});
  EXPECT_EQ(distinct_values(single, "Location"), (std::set<std::string>{"Office"}));
}

TEST(DistinctValuesTest, OrderIndependentUnderRowPermutation) {
  const auto dataset = testing::call_sample();
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto rows = dataset.rows();
    rng.shuffle(std::span(rows));
    const auto permuted = validate_dataset(dataset.schema(), rows);
    for (std::size_t a = 0; a < dataset.schema().attribute_count(); ++a) {
      EXPECT_EQ(distinct_values(permuted, a), distinct_values(dataset, a));
      EXPECT_EQ(distinct_values(permuted, a), distinct_values(permuted, a));
    }
  }
}

TEST(DatasetTest, WithoutAndRestrictedToPreserveOrderAndIds) {
  const auto dataset = testing::call_sample();
  const auto kept = dataset.without({3, 8});
  ASSERT_EQ(kept.size(), 7u);
  std::vector<RowId> ids;
  for (const auto& row : kept.rows()) ids.push_back(row.id);
  EXPECT_EQ(ids, (std::vector<RowId>{1, 2, 4, 5, 6, 7, 9}));
  const auto only = dataset.restricted_to({8, 3});
  ASSERT_EQ(only.size(), 2u);
  EXPECT_EQ(only.row(0).id, 3u);
  EXPECT_EQ(only.row(1).id, 8u);
}

TEST(DatasetCsvTest, RoundTripsThroughText) {
  const auto dataset = testing::call_sample();
  std::ostringstream out;
  write_dataset_csv(out, dataset);
  std::istringstream in(out.str());
  EXPECT_EQ(read_dataset_csv(in), dataset);
}

TEST(DatasetCsvTest, QuotedFieldsAndErrorsCarryLineNumbers) {
  EXPECT_EQ(split_csv_line("a,\"b,c\",\"d\"\"e\"\r", 1), (std::vector<std::string>{"a", "b,c", "d\"e"}));
  EXPECT_THROW(split_csv_line("a,\"b", 1), ParseError);

  std::istringstream missing("Location,Behavior\nOffice,Accept\n,Reject\n");
  try {
    read_dataset_csv(missing);
    FAIL() << "expected ParseError";
  } catch (const ParseError& error) {
    EXPECT_EQ(error.line(), 3u);
  }
  std::istringstream arity("Location,Behavior\nOffice,Accept,Extra\n");
  EXPECT_THROW(read_dataset_csv(arity), ParseError);
  std::istringstream header_only("Location,Behavior\n");
  EXPECT_THROW(read_dataset_csv(header_only), EmptyDatasetError);
  EXPECT_THROW(read_dataset_csv_file("/nonexistent/table.csv"), InputError);
}

}  // namespace
}  // namespace noise_sieve
