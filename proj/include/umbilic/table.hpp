#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace umbilic {

using Cell = std::variant<double, std::string>;

/// Column-labelled result table with free-form metadata lines.
struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_meta(std::string key, std::string value) { meta.emplace_back(std::move(key), std::move(value)); }
  void add_row(std::vector<Cell> row);
};

/// Shortest decimal string that parses back to exactly x; "nan", "inf", "-inf" otherwise.
std::string format_double(double x);

/// "# key: value" metadata lines, a header row, then comma-separated rows.
std::string to_csv(const Table& table);
/// {"meta": {...}, "columns": [...], "rows": [[...], ...]}; non-finite numbers become null.
std::string to_json(const Table& table);

/// Inverse of to_csv. Cells that parse completely as numbers become doubles.
Table parse_csv(const std::string& text);
/// Inverse of to_json; null cells read back as NaN.
Table parse_json(const std::string& text);

}  // namespace umbilic
