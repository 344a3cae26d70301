// Apache License, Version 2.0, refer to LICENSE.txt

#include "noise_sieve/dataset_csv.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "noise_sieve/error.hpp"

namespace noise_sieve {

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_number) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line_number);
  fields.push_back(std::move(field));
  return fields;
}

namespace {

bool blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

std::string quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  std::size_t line_number = 0;
  if (!std::getline(in, line)) throw ParseError("missing header", 1);
  ++line_number;
  const auto header = split_csv_line(line, line_number);
  if (header.size() < 2) throw ParseError("header needs at least one attribute and a class column", line_number);

  std::vector<AttributeSpec> attributes;
  for (std::size_t i = 0; i + 1 < header.size(); ++i) attributes.push_back({header[i], std::nullopt});
  const std::string class_attribute = header.back();

  std::vector<RowInput> rows;
  std::vector<std::size_t> row_lines;
  std::vector<std::string> labels;
  while (std::getline(in, line)) {
    ++line_number;
    if (blank(line)) continue;
    auto fields = split_csv_line(line, line_number);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " + std::to_string(fields.size()),
                       line_number);
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (fields[i].empty()) throw ParseError("missing value for '" + header[i] + "'", line_number);
    }
    std::string label = std::move(fields.back());
    fields.pop_back();
    if (std::find(labels.begin(), labels.end(), label) == labels.end()) labels.push_back(label);
    rows.push_back({rows.size() + 1, std::move(fields), std::move(label)});
    row_lines.push_back(line_number);
  }
  if (rows.empty()) throw EmptyDatasetError("dataset file has a header but no rows");

  try {
    return validate_dataset(AttributeSchema(std::move(attributes), class_attribute, std::move(labels)),
                            std::move(rows));
  } catch (const SchemaError& error) {
    if (error.row() && *error.row() < row_lines.size()) {
      throw ParseError(error.what(), row_lines[*error.row()]);
    }
    throw ParseError(error.what(), 1);
  }
}

Dataset read_dataset_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open dataset file '" + path + "'");
  try {
    return read_dataset_csv(in);
  } catch (const ParseError& error) {
    throw error.with_source(path);
  }
}

void write_dataset_csv(std::ostream& out, const Dataset& dataset) {
  const auto& schema = dataset.schema();
  for (const auto& spec : schema.attributes()) out << quote_if_needed(spec.name) << ',';
  out << quote_if_needed(schema.class_attribute()) << '\n';
  for (const auto& row : dataset.rows()) {
    for (const auto& value : row.instance.values) out << quote_if_needed(value) << ',';
    out << quote_if_needed(row.label) << '\n';
  }
}

}  // namespace noise_sieve
