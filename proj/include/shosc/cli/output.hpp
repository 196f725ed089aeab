#pragma once

// Tabular output records and their CSV / JSON serializations.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace shosc::cli {

using Cell = std::variant<std::int64_t, double, std::string>;

inline constexpr const char* kSchemaVersion = "1";

struct OutputRecord {
    std::string schema_version = kSchemaVersion;
    std::string command;
    /// Every parameter used to produce the rows, in emission order.
    std::vector<std::pair<std::string, Cell>> parameters;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
    const Cell& parameter(const std::string& key) const;
    std::size_t column_index(const std::string& name) const;
};

enum class Format { csv, json };

Format parse_format(const std::string& text);

/// 17 significant digits, enough to round-trip any double.
std::string format_real(double value);
std::string format_cell(const Cell& cell);

/// Cell as a double (integers are converted; strings throw).
double cell_real(const Cell& cell);
std::int64_t cell_integer(const Cell& cell);

/// CSV: "# key=value" comment lines for schema_version, command and parameters, then a
/// header row and one line per row.
void write_csv(const OutputRecord& record, std::ostream& out);
/// JSON: {"schema_version", "command", "parameters": {...}, "rows": [{column: value}, ...]}.
void write_json(const OutputRecord& record, std::ostream& out);
void write(const OutputRecord& record, Format format, std::ostream& out);

OutputRecord read_csv(std::istream& in);
OutputRecord read_json(std::istream& in);

struct ErrorRecord {
    std::string command;
    /// parameter_error, numeric_error or invariant_failure
    std::string kind;
    std::string message;
};

/// JSON: {"schema_version", "command", "error": {"kind", "message"}}. CSV: a one-row table
/// with columns kind, message.
void write_error(const ErrorRecord& error, Format format, std::ostream& out);

}  // namespace shosc::cli
