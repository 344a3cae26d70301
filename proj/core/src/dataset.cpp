// Apache License, Version 2.0, refer to LICENSE.txt

#include "noise_sieve/dataset.hpp"

#include <algorithm>
#include <iterator>
#include <unordered_set>

#include "noise_sieve/error.hpp"

namespace noise_sieve {

AttributeSchema::AttributeSchema(std::vector<AttributeSpec> attributes, std::string class_attribute,
                                 std::vector<std::string> class_labels)
    : attributes_(std::move(attributes)),
      class_attribute_(std::move(class_attribute)),
      class_labels_(std::move(class_labels)) {
  std::unordered_set<std::string> names;
  for (const auto& spec : attributes_) {
    if (spec.name.empty()) throw SchemaError("attribute name must not be empty");
    if (!names.insert(spec.name).second) throw SchemaError("duplicate attribute name '" + spec.name + "'");
    if (spec.declared_values) {
      for (const auto& value : *spec.declared_values) {
        if (value.empty()) throw SchemaError("attribute '" + spec.name + "' declares an empty value");
      }
    }
  }
  if (class_attribute_.empty()) throw SchemaError("class attribute name must not be empty");
  if (names.contains(class_attribute_)) {
    throw SchemaError("class attribute '" + class_attribute_ + "' is also a feature attribute");
  }
  if (class_labels_.empty()) throw SchemaError("schema needs at least one class label");
  std::unordered_set<std::string> labels;
  for (const auto& label : class_labels_) {
    if (label.empty()) throw SchemaError("class label must not be empty");
    if (!labels.insert(label).second) throw SchemaError("duplicate class label '" + label + "'");
  }
}

std::optional<std::size_t> AttributeSchema::find_attribute(std::string_view name) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> AttributeSchema::find_label(std::string_view label) const {
  for (std::size_t i = 0; i < class_labels_.size(); ++i) {
    if (class_labels_[i] == label) return i;
  }
  return std::nullopt;
}

std::size_t AttributeSchema::attribute_index(std::string_view name) const {
  if (auto index = find_attribute(name)) return *index;
  throw UnknownNameError("unknown attribute '" + std::string(name) + "'");
}

std::size_t AttributeSchema::label_index(std::string_view label) const {
  if (auto index = find_label(label)) return *index;
  throw UnknownNameError("unknown class label '" + std::string(label) + "'");
}

namespace {

void check_row(const AttributeSchema& schema, std::size_t position, const std::vector<std::string>& values,
               const std::string& label) {
  if (values.size() != schema.attribute_count()) {
    throw SchemaError("row " + std::to_string(position) + ": expected " +
                          std::to_string(schema.attribute_count()) + " values, got " +
                          std::to_string(values.size()),
                      position);
  }
  for (std::size_t a = 0; a < values.size(); ++a) {
    if (values[a].empty()) {
      throw SchemaError("row " + std::to_string(position) + ": missing value for '" + schema.attribute_name(a) + "'",
                        position, schema.attribute_name(a));
    }
  }
  if (!schema.find_label(label)) {
    throw SchemaError("row " + std::to_string(position) + ": label '" + label + "' is not a declared class label",
                      position, schema.class_attribute());
  }
}

}  // namespace

Dataset validate_dataset(AttributeSchema schema, std::vector<LabeledInstance> rows) {
  if (rows.empty()) throw EmptyDatasetError("dataset has no rows");
  std::unordered_set<RowId> seen;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    check_row(schema, i, rows[i].instance.values, rows[i].label);
    if (!seen.insert(rows[i].id).second) {
      throw SchemaError("row " + std::to_string(i) + ": duplicate id " + std::to_string(rows[i].id), i, "id");
    }
  }
  return Dataset(std::move(schema), std::move(rows));
}

Dataset validate_dataset(AttributeSchema schema, std::vector<RowInput> rows) {
  if (rows.empty()) throw EmptyDatasetError("dataset has no rows");
  const bool has_ids = rows.front().id.has_value();
  std::vector<LabeledInstance> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].id.has_value() != has_ids) {
      throw SchemaError("row " + std::to_string(i) + ": ids must be given for all rows or none", i, "id");
    }
    out.push_back({has_ids ? *rows[i].id : i, Instance{std::move(rows[i].values)}, std::move(rows[i].label)});
  }
  return validate_dataset(std::move(schema), std::move(out));
}

Dataset Dataset::without(const std::set<RowId>& ids) const {
  std::vector<LabeledInstance> kept;
  kept.reserve(rows_.size());
  std::copy_if(rows_.begin(), rows_.end(), std::back_inserter(kept),
               [&](const LabeledInstance& row) { return !ids.contains(row.id); });
  return Dataset(schema_, std::move(kept));
}

Dataset Dataset::restricted_to(const std::set<RowId>& ids) const {
  std::vector<LabeledInstance> kept;
  std::copy_if(rows_.begin(), rows_.end(), std::back_inserter(kept),
               [&](const LabeledInstance& row) { return ids.contains(row.id); });
  return Dataset(schema_, std::move(kept));
}

std::set<std::string> distinct_values(const Dataset& dataset, std::size_t attribute_index) {
  const auto& spec = dataset.schema().attributes().at(attribute_index);
  std::set<std::string> values;
  if (spec.declared_values) values = *spec.declared_values;
  for (const auto& row : dataset.rows()) values.insert(row.instance.values[attribute_index]);
  return values;
}

std::set<std::string> distinct_values(const Dataset& dataset, std::string_view attribute) {
  return distinct_values(dataset, dataset.schema().attribute_index(attribute));
}

}  // namespace noise_sieve
