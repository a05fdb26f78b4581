#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace bigs {

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

/// Tables of preformatted cells plus the metadata every report carries.
struct Report {
  std::string command;
  std::string version;
  std::optional<std::uint64_t> seed;
  nlohmann::json config = nlohmann::json::object();
  std::vector<Table> tables;

  const Table* find(const std::string& name) const;
};

/// Metadata as '#' lines, then each table as "# table: <name>", a header
/// row and the data rows. Tables are separated by a blank line.
void write_csv(std::ostream& out, const Report& report, bool include_all = false);
void write_json(std::ostream& out, const Report& report);
Report read_json(std::istream& in);

/// Cells are quoted only when they contain a comma, quote or newline.
std::string csv_escape(const std::string& cell);

}  // namespace bigs
