#include "buckle/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace buckle::output {
namespace {

std::string cell_text(const Cell& cell, int precision) {
    if (const auto* i = std::get_if<long long>(&cell)) {
        return std::to_string(*i);
    }
    if (const auto* d = std::get_if<double>(&cell)) {
        return format_number(*d, precision);
    }
    if (const auto* s = std::get_if<std::string>(&cell)) {
        return *s;
    }
    return {};
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n\r") == std::string::npos) {
        return text;
    }
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string json_value(const Cell& cell, int precision) {
    if (std::holds_alternative<std::monostate>(cell)) {
        return "null";
    }
    if (const auto* d = std::get_if<double>(&cell); d && !std::isfinite(*d)) {
        return "null";
    }
    if (const auto* s = std::get_if<std::string>(&cell)) {
        return nlohmann::json(*s).dump();
    }
    return cell_text(cell, precision);
}

void check_precision(int precision) {
    if (precision < kMinPrecision || precision > kMaxPrecision) {
        throw std::invalid_argument("precision must lie in [4, 17]");
    }
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::invalid_argument("row has " + std::to_string(row.size()) + " cells, table has " +
                                    std::to_string(columns.size()) + " columns");
    }
    rows.push_back(std::move(row));
}

std::string format_number(double value, int precision) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0.0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::general, precision);
    return {buf.data(), res.ptr};
}

void write_csv(const Table& table, std::ostream& out, int precision) {
    check_precision(precision);
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
        out << (j ? "," : "") << csv_field(table.columns[j]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            out << (j ? "," : "") << csv_field(cell_text(row[j], precision));
        }
        out << '\n';
    }
}

void write_json(const Table& table, std::ostream& out, int precision) {
    check_precision(precision);
    out << '[';
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        out << (i ? ",\n " : "\n ") << '{';
        const auto& row = table.rows[i];
        for (std::size_t j = 0; j < row.size(); ++j) {
            out << (j ? ", " : "") << nlohmann::json(table.columns[j]).dump() << ": "
                << json_value(row[j], precision);
        }
        out << '}';
    }
    out << (table.rows.empty() ? "]\n" : "\n]\n");
}

void write_table(const Table& table, Format format, std::ostream& out, int precision) {
    if (format == Format::Json) {
        write_json(table, out, precision);
    } else {
        write_csv(table, out, precision);
    }
}

}  // namespace buckle::output
