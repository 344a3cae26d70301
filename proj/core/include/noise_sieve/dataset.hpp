// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace noise_sieve {

using RowId = std::size_t;

struct AttributeSpec {
  std::string name;
  // Values known up front (e.g. from a generator config). Observed values are
  // always added on top of these by distinct_values().
  std::optional<std::set<std::string>> declared_values;

  bool operator==(const AttributeSpec&) const = default;
};

/// Ordered categorical attributes plus an ordered class-label set.
///
/// Label order is significant: every argmax in the library breaks ties in
/// favour of the label that comes first here.
class AttributeSchema {
 public:
  /// Throws SchemaError on duplicate/empty attribute names, an empty or
  /// duplicated label set, or a class attribute that shadows a feature.
  AttributeSchema(std::vector<AttributeSpec> attributes, std::string class_attribute,
                  std::vector<std::string> class_labels);

  const std::vector<AttributeSpec>& attributes() const { return attributes_; }
  std::size_t attribute_count() const { return attributes_.size(); }
  const std::string& attribute_name(std::size_t index) const { return attributes_.at(index).name; }
  const std::string& class_attribute() const { return class_attribute_; }
  const std::vector<std::string>& class_labels() const { return class_labels_; }
  std::size_t label_count() const { return class_labels_.size(); }

  std::optional<std::size_t> find_attribute(std::string_view name) const;
  std::optional<std::size_t> find_label(std::string_view label) const;

  // Throwing lookups (UnknownNameError).
  std::size_t attribute_index(std::string_view name) const;
  std::size_t label_index(std::string_view label) const;

  bool operator==(const AttributeSchema&) const = default;

 private:
  std::vector<AttributeSpec> attributes_;
  std::string class_attribute_;
  std::vector<std::string> class_labels_;
};

struct Instance {
  std::vector<std::string> values;

  bool operator==(const Instance&) const = default;
};

struct LabeledInstance {
  RowId id = 0;
  Instance instance;
  std::string label;

  bool operator==(const LabeledInstance&) const = default;
};

// Unvalidated input row. Either every row carries an id or none does.
struct RowInput {
  std::optional<RowId> id;
  std::vector<std::string> values;
  std::string label;
};

/// A schema-validated, immutable collection of labelled categorical rows.
class Dataset {
 public:
  const AttributeSchema& schema() const { return schema_; }
  const std::vector<LabeledInstance>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  const LabeledInstance& row(std::size_t position) const { return rows_.at(position); }

  // Rows with ids in `ids` removed; order and ids of the survivors preserved.
  // The result may be empty.
  Dataset without(const std::set<RowId>& ids) const;
  // Rows whose id is in `ids`, in dataset order.
  Dataset restricted_to(const std::set<RowId>& ids) const;

  bool operator==(const Dataset&) const = default;

 private:
  friend Dataset validate_dataset(AttributeSchema schema, std::vector<RowInput> rows);
  friend Dataset validate_dataset(AttributeSchema schema, std::vector<LabeledInstance> rows);

  Dataset(AttributeSchema schema, std::vector<LabeledInstance> rows)
      : schema_(std::move(schema)), rows_(std::move(rows)) {}

  AttributeSchema schema_;
  std::vector<LabeledInstance> rows_;
};

/// Validates rows against `schema`. Rows without ids get 0..N-1 in input
/// order. Throws EmptyDatasetError for zero rows and SchemaError naming the
/// first offending row index and field otherwise.
Dataset validate_dataset(AttributeSchema schema, std::vector<RowInput> rows);
Dataset validate_dataset(AttributeSchema schema, std::vector<LabeledInstance> rows);

/// Values observed for `attribute` in `dataset`, unioned with the schema's
/// declared values for it.
std::set<std::string> distinct_values(const Dataset& dataset, std::string_view attribute);
std::set<std::string> distinct_values(const Dataset& dataset, std::size_t attribute_index);

}  // namespace noise_sieve
