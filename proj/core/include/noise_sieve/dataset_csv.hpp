// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "noise_sieve/dataset.hpp"

namespace noise_sieve {

// Splits one CSV record. Handles double-quoted fields with "" escapes; a
// trailing '\r' is dropped. Throws ParseError on an unterminated quote.
std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_number);

/// Reads the pre-segmented dataset form: a header naming every column, the
/// last column being the class. Rows get ids 1..N in file order and class
/// labels are ordered by first appearance.
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv_file(const std::string& path);

void write_dataset_csv(std::ostream& out, const Dataset& dataset);

}  // namespace noise_sieve
