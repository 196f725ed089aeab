#include "shosc/cli/output.hpp"

#include "shosc/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace shosc::cli {

using Json = nlohmann::ordered_json;

void OutputRecord::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("OutputRecord: row width does not match the columns");
    rows.push_back(std::move(row));
}

const Cell& OutputRecord::parameter(const std::string& key) const {
    for (const auto& [name, value] : parameters) {
        if (name == key) return value;
    }
    throw ParameterError("OutputRecord: no parameter named " + key);
}

std::size_t OutputRecord::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    throw ParameterError("OutputRecord: no column named " + name);
}

Format parse_format(const std::string& text) {
    if (text == "csv") return Format::csv;
    if (text == "json") return Format::json;
    throw ParameterError("format must be csv or json");
}

std::string format_real(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::string format_cell(const Cell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell)) return format_real(*d);
    return std::get<std::string>(cell);
}

double cell_real(const Cell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
    if (const auto* d = std::get_if<double>(&cell)) return *d;
    throw ParameterError("cell holds text, not a number: " + std::get<std::string>(cell));
}

std::int64_t cell_integer(const Cell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
    throw ParameterError("cell does not hold an integer: " + format_cell(cell));
}

namespace {

Json to_json(const Cell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
    if (const auto* d = std::get_if<double>(&cell)) return *d;
    return std::get<std::string>(cell);
}

Cell from_json(const Json& value) {
    if (value.is_number_integer()) return value.get<std::int64_t>();
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
}

Cell parse_cell(const std::string& text) {
    std::int64_t i = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (auto [ptr, ec] = std::from_chars(first, last, i); ec == std::errc() && ptr == last) return i;
    double d = 0.0;
    if (auto [ptr, ec] = std::from_chars(first, last, d); ec == std::errc() && ptr == last) return d;
    return text;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                current += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

std::string csv_escape(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_csv_line(const std::vector<std::string>& fields, std::ostream& out) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out << ',';
        out << csv_escape(fields[i]);
    }
    out << '\n';
}

}  // namespace

void write_csv(const OutputRecord& record, std::ostream& out) {
    out << "# schema_version=" << record.schema_version << '\n';
    out << "# command=" << record.command << '\n';
    for (const auto& [key, value] : record.parameters) out << "# " << key << '=' << format_cell(value) << '\n';
    write_csv_line(record.columns, out);
    std::vector<std::string> fields;
    for (const auto& row : record.rows) {
        fields.clear();
        for (const Cell& cell : row) fields.push_back(format_cell(cell));
        write_csv_line(fields, out);
    }
}

void write_json(const OutputRecord& record, std::ostream& out) {
    Json doc;
    doc["schema_version"] = record.schema_version;
    doc["command"] = record.command;
    Json params = Json::object();
    for (const auto& [key, value] : record.parameters) params[key] = to_json(value);
    doc["parameters"] = std::move(params);
    Json rows = Json::array();
    for (const auto& row : record.rows) {
        Json object = Json::object();
        for (std::size_t i = 0; i < row.size(); ++i) object[record.columns[i]] = to_json(row[i]);
        rows.push_back(std::move(object));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

void write(const OutputRecord& record, Format format, std::ostream& out) {
    if (format == Format::csv) {
        write_csv(record, out);
    } else {
        write_json(record, out);
    }
}

OutputRecord read_csv(std::istream& in) {
    OutputRecord record;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (!header_seen && line.rfind("# ", 0) == 0) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = line.substr(2, eq - 2);
            const std::string value = line.substr(eq + 1);
            if (key == "schema_version") {
                record.schema_version = value;
            } else if (key == "command") {
                record.command = value;
            } else {
                record.parameters.emplace_back(key, parse_cell(value));
            }
            continue;
        }
        const auto fields = split_csv_line(line);
        if (!header_seen) {
            record.columns = fields;
            header_seen = true;
            continue;
        }
        std::vector<Cell> row;
        for (const auto& field : fields) row.push_back(parse_cell(field));
        record.add_row(std::move(row));
    }
    if (!header_seen) throw ParameterError("read_csv: missing header row");
    return record;
}

OutputRecord read_json(std::istream& in) {
    const Json doc = Json::parse(in);
    OutputRecord record;
    record.schema_version = doc.at("schema_version").get<std::string>();
    record.command = doc.at("command").get<std::string>();
    for (const auto& [key, value] : doc.at("parameters").items()) record.parameters.emplace_back(key, from_json(value));
    const Json& rows = doc.at("rows");
    if (!rows.empty()) {
        for (const auto& [key, value] : rows.front().items()) record.columns.push_back(key);
    }
    for (const Json& object : rows) {
        std::vector<Cell> row;
        for (const auto& column : record.columns) row.push_back(from_json(object.at(column)));
        record.add_row(std::move(row));
    }
    return record;
}

void write_error(const ErrorRecord& error, Format format, std::ostream& out) {
    if (format == Format::json) {
        Json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["command"] = error.command;
        doc["error"] = {{"kind", error.kind}, {"message", error.message}};
        out << doc.dump(2) << '\n';
        return;
    }
    out << "# schema_version=" << kSchemaVersion << '\n';
    out << "# command=" << error.command << '\n';
    write_csv_line({"kind", "message"}, out);
    write_csv_line({error.kind, error.message}, out);
}

}  // namespace shosc::cli
