#pragma once

// Row-oriented tables rendered either as CSV or as a JSON array of objects
// with the same keys, so the two formats always carry the same fields.

#include <json.hpp>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace iqy::cli {

using Cell = std::variant<std::string, double, std::int64_t, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Header line, then one line per row, LF endings. Doubles use format_number.
std::string render_csv(const Table& table);

/// Array of objects; NaN and infinities become null.
nlohmann::ordered_json table_json(const Table& table);

/// JSON value for a double, rounded to the CSV precision.
nlohmann::ordered_json number_json(double x);

}  // namespace iqy::cli
