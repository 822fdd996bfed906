#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gpbayes::output {

inline constexpr const char* kSchemaVersion = "1";

enum class Format { csv, json };

// A table cell. std::monostate renders as an empty CSV field / JSON null.
using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// One emission: schema version, command name, echoed inputs and tables.
struct Document {
  std::string command;
  std::vector<std::pair<std::string, Cell>> params;
  std::vector<Table> tables;
};

// CSV: '#'-prefixed metadata lines (schema_version, command, one per
// parameter), then per table a "# table=<name>" line, a header row and the
// data rows; tables are separated by a blank line. Fields are quoted per
// RFC 4180 when needed; reals use 12 significant digits.
void write_csv(std::ostream& os, const Document& doc);

// JSON: {"schema_version", "command", "params": {...},
//        "tables": {"<name>": [{column: value, ...}, ...], ...}}
void write_json(std::ostream& os, const Document& doc);

void write(std::ostream& os, const Document& doc, Format format);

std::string csv_escape(const std::string& field);

}  // namespace gpbayes::output
