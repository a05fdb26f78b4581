#include "bigs/report.hpp"

#include "bigs/errors.hpp"

namespace bigs {

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size())
    throw ArgumentError("row width " + std::to_string(row.size()) + " does not match table '" +
                        name + "'");
  rows.push_back(std::move(row));
}

const Table* Report::find(const std::string& name) const {
  for (const auto& t : tables)
    if (t.name == name) return &t;
  return nullptr;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv(std::ostream& out, const Report& report, bool include_all) {
  out << "# bigs " << report.version << '\n';
  out << "# command: " << report.command << '\n';
  out << "# seed: " << (report.seed ? std::to_string(*report.seed) : std::string("none")) << '\n';
  out << "# config: " << report.config.dump() << '\n';
  bool first = true;
  for (const auto& t : report.tables) {
    // Per-sample tables are large; they go to JSON unless asked for.
    if (!include_all && t.name == "samples") continue;
    if (!first) out << '\n';
    first = false;
    out << "# table: " << t.name << '\n';
    for (std::size_t c = 0; c < t.columns.size(); ++c)
      out << (c ? "," : "") << csv_escape(t.columns[c]);
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_escape(row[c]);
      out << '\n';
    }
  }
}

void write_json(std::ostream& out, const Report& report) {
  nlohmann::json j;
  j["command"] = report.command;
  j["version"] = report.version;
  j["seed"] = report.seed ? nlohmann::json(*report.seed) : nlohmann::json(nullptr);
  j["config"] = report.config;
  j["tables"] = nlohmann::json::array();
  for (const auto& t : report.tables)
    j["tables"].push_back({{"name", t.name}, {"columns", t.columns}, {"rows", t.rows}});
  out << j.dump(2) << '\n';
}

Report read_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
    Report r;
    r.command = j.at("command").get<std::string>();
    r.version = j.at("version").get<std::string>();
    if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
    r.config = j.at("config");
    for (const auto& t : j.at("tables")) {
      Table table{t.at("name").get<std::string>(),
                  t.at("columns").get<std::vector<std::string>>(), {}};
      for (const auto& row : t.at("rows")) table.add_row(row.get<std::vector<std::string>>());
      r.tables.push_back(std::move(table));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed report JSON: ") + e.what());
  }
}

}  // namespace bigs
