#pragma once

// Tabular results rendered as CSV or JSON with one shared number format.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace buckle::output {

enum class Format { Csv, Json };

/// Empty cells print as nothing in CSV and as null in JSON.
using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    /// Throws std::invalid_argument when the row width differs from columns.
    void add_row(std::vector<Cell> row);
};

inline constexpr int kDefaultPrecision = 10;
inline constexpr int kMinPrecision = 4;
inline constexpr int kMaxPrecision = 17;

/// "%.{precision}g" text, independent of the C locale. Non-finite
/// values give "nan", "inf" or "-inf".
[[nodiscard]] std::string format_number(double value, int precision);

/// Header line then one line per row; fields holding a comma, quote or
/// newline are quoted.
void write_csv(const Table& table, std::ostream& out, int precision = kDefaultPrecision);

/// Array of objects keyed by column name, one object per line. Numbers use
/// the CSV text; non-finite values become null.
void write_json(const Table& table, std::ostream& out, int precision = kDefaultPrecision);

void write_table(const Table& table, Format format, std::ostream& out,
                 int precision = kDefaultPrecision);

}  // namespace buckle::output
