#include "testability/dataset/csv.hpp"

#include <fmt/format.h>

#include <cmath>

#include "testability/core/errors.hpp"

namespace testability::dataset {

CsvTable parse_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  CsvTable table;
  std::size_t i = 0;
  std::size_t line = 1;
  while (i < text.size()) {
    const std::size_t row_line = line;
    if (text[i] == '\n' || text[i] == '\r' || text[i] == '#') {
      // Blank or comment line.
      while (i < text.size() && text[i] != '\n') ++i;
      ++i;
      ++line;
      continue;
    }
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool done = false;
    while (!done) {
      if (i >= text.size()) {
        if (quoted) throw Error("InputError", "line " + std::to_string(row_line) + ": unterminated quote");
        row.push_back(std::move(field));
        break;
      }
      const char c = text[i++];
      if (quoted) {
        if (c == '"') {
          if (i < text.size() && text[i] == '"') {
            field += '"';
            ++i;
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line;
          field += c;
        }
        continue;
      }
      switch (c) {
        case '"':
          quoted = true;
          break;
        case ',':
          row.push_back(std::move(field));
          field.clear();
          break;
        case '\r':
          break;
        case '\n':
          row.push_back(std::move(field));
          ++line;
          done = true;
          break;
        default:
          field += c;
      }
    }
    table.rows.push_back(std::move(row));
    table.line_numbers.push_back(row_line);
  }
  return table;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  if (std::isfinite(value) && std::nearbyint(value) == value && std::fabs(value) < 1e15) {
    return fmt::format("{:.0f}", value);
  }
  return fmt::format("{}", value);
}

}  // namespace testability::dataset
