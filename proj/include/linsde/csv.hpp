#pragma once

// RFC-4180-style CSV output: header row, LF line endings, decimals printed
// with 17 significant digits so rereading reproduces the exact doubles.
// Every file starts with one comment line carrying the reproducibility
// triple (config hash, seed, version). NaN anywhere is a hard error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace linsde {

class NanInTableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string format_double(double v) {
    if (std::isnan(v)) throw NanInTableError("NaN in output table");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Table {
    using Cell = std::variant<std::string, double>;

    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    explicit Table(std::vector<std::string> columns) : header(std::move(columns)) {}

    void add_row(std::vector<Cell> row) {
        if (row.size() != header.size())
            throw std::invalid_argument("row width does not match header");
        rows.push_back(std::move(row));
    }
};

namespace detail {

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

inline std::string cell_to_string(const Table::Cell& cell) {
    if (std::holds_alternative<double>(cell)) return format_double(std::get<double>(cell));
    return csv_escape(std::get<std::string>(cell));
}

} // namespace detail

inline std::string render_csv(const Table& table, const std::string& metadata_comment) {
    std::string out;
    if (!metadata_comment.empty()) {
        out += "# ";
        out += metadata_comment;
        out += '\n';
    }
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i > 0) out += ',';
        out += detail::csv_escape(table.header[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out += ',';
            out += detail::cell_to_string(row[i]);
        }
        out += '\n';
    }
    return out;
}

inline void write_csv(const Table& table, const std::string& path,
                      const std::string& metadata_comment) {
    const std::string body = render_csv(table, metadata_comment);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    file.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!file) throw std::runtime_error("failed writing output file: " + path);
}

} // namespace linsde
