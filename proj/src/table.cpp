#include "umbilic/table.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "umbilic/errors.hpp"

namespace umbilic {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw Error(ErrorCode::InvalidConfig, "row width does not match the header");
  rows.push_back(std::move(row));
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

std::string cell_text(const Cell& cell) {
  if (const double* x = std::get_if<double>(&cell)) return format_double(*x);
  return std::get<std::string>(cell);
}

Cell read_cell(const std::string& text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec == std::errc() && ptr == end && !text.empty()) return value;
  return text;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::string to_csv(const Table& table) {
  std::ostringstream out;
  for (const auto& [key, value] : table.meta) out << "# " << key << ": " << value << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
  return out.str();
}

std::string to_json(const Table& table) {
  nlohmann::ordered_json doc;
  doc["meta"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.meta) doc["meta"][key] = value;
  doc["columns"] = table.columns;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto json_row = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (const double* x = std::get_if<double>(&cell))
        json_row.push_back(std::isfinite(*x) ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(nullptr));
      else
        json_row.push_back(std::get<std::string>(cell));
    }
    doc["rows"].push_back(std::move(json_row));
  }
  return doc.dump(2) + "\n";
}

Table parse_csv(const std::string& text) {
  Table table;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      const auto sep = line.find(": ", 2);
      if (sep == std::string::npos) throw Error(ErrorCode::InvalidConfig, "malformed metadata line");
      table.add_meta(line.substr(2, sep - 2), line.substr(sep + 2));
      continue;
    }
    if (line.empty()) continue;
    if (!header) {
      table.columns = split_row(line);
      header = true;
      continue;
    }
    std::vector<Cell> row;
    for (const auto& cell : split_row(line)) row.push_back(read_cell(cell));
    table.add_row(std::move(row));
  }
  return table;
}

Table parse_json(const std::string& text) {
  const auto doc = nlohmann::ordered_json::parse(text);
  Table table;
  for (const auto& [key, value] : doc.at("meta").items()) table.add_meta(key, value.get<std::string>());
  table.columns = doc.at("columns").get<std::vector<std::string>>();
  for (const auto& json_row : doc.at("rows")) {
    std::vector<Cell> row;
    for (const auto& cell : json_row) {
      if (cell.is_null())
        row.emplace_back(std::numeric_limits<double>::quiet_NaN());
      else if (cell.is_number())
        row.emplace_back(cell.get<double>());
      else
        row.emplace_back(cell.get<std::string>());
    }
    table.add_row(std::move(row));
  }
  return table;
}

}  // namespace umbilic
