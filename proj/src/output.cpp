#include "gpbayes/output.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include <json.hpp>

#include "gpbayes/validation.hpp"

namespace gpbayes::output {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return csv_escape(v); }
  };
  return std::visit(Visitor{}, cell);
}

ordered_json json_cell(const Cell& cell) {
  struct Visitor {
    ordered_json operator()(std::monostate) const { return nullptr; }
    ordered_json operator()(double v) const {
      if (!std::isfinite(v)) return nullptr;
      // Round through the 12-digit rendering so CSV and JSON agree.
      return std::stod(format_real(v));
    }
    ordered_json operator()(std::int64_t v) const { return v; }
    ordered_json operator()(bool v) const { return v; }
    ordered_json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

}  // namespace

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void write_csv(std::ostream& os, const Document& doc) {
  os << "# schema_version=" << kSchemaVersion << '\n';
  os << "# command=" << doc.command << '\n';
  for (const auto& [key, value] : doc.params) os << "# " << key << '=' << csv_cell(value) << '\n';
  bool first = true;
  for (const Table& table : doc.tables) {
    if (!first) os << '\n';
    first = false;
    os << "# table=" << table.name << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      os << (i ? "," : "") << csv_escape(table.columns[i]);
    }
    os << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
      os << '\n';
    }
  }
}

void write_json(std::ostream& os, const Document& doc) {
  ordered_json root;
  root["schema_version"] = kSchemaVersion;
  root["command"] = doc.command;
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : doc.params) params[key] = json_cell(value);
  root["params"] = std::move(params);
  ordered_json tables = ordered_json::object();
  for (const Table& table : doc.tables) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
      ordered_json obj = ordered_json::object();
      for (std::size_t i = 0; i < table.columns.size() && i < row.size(); ++i) {
        obj[table.columns[i]] = json_cell(row[i]);
      }
      rows.push_back(std::move(obj));
    }
    tables[table.name] = std::move(rows);
  }
  root["tables"] = std::move(tables);
  os << root.dump(2) << '\n';
}

void write(std::ostream& os, const Document& doc, Format format) {
  if (format == Format::json) {
    write_json(os, doc);
  } else {
    write_csv(os, doc);
  }
}

}  // namespace gpbayes::output
