#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace testability::dataset {

/// RFC 4180-style rows: comma separated, optional double quotes with ""
/// escapes, CRLF or LF line ends, leading UTF-8 BOM skipped. Lines that are
/// empty or start with '#' are skipped. `line_numbers[i]` is the physical
/// line of rows[i].
struct CsvTable {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
};

CsvTable parse_csv(std::string_view text);

std::string csv_escape(std::string_view field);

/// Shortest text that parses back to exactly `value`; integers print
/// without a decimal point.
std::string format_number(double value);

}  // namespace testability::dataset
