#include "iqy/cli_table.hpp"

#include "iqy/cli.hpp"

#include <cmath>
#include <string>

namespace iqy::cli {

namespace {

std::string csv_cell(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) {
        if (s->find_first_of(",\"\n") == std::string::npos) {
            return *s;
        }
        std::string quoted = "\"";
        for (char ch : *s) {
            if (ch == '"') {
                quoted += '"';
            }
            quoted += ch;
        }
        return quoted + "\"";
    }
    if (const auto* d = std::get_if<double>(&cell)) {
        return format_number(*d);
    }
    if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        return std::to_string(*i);
    }
    return std::get<bool>(cell) ? "true" : "false";
}

nlohmann::ordered_json cell_json(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) {
        return *s;
    }
    if (const auto* d = std::get_if<double>(&cell)) {
        return number_json(*d);
    }
    if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        return *i;
    }
    return std::get<bool>(cell);
}

}  // namespace

std::string render_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out += (c == 0 ? "" : ",") + table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += (c == 0 ? "" : ",") + csv_cell(row[c]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json number_json(double x) {
    if (!std::isfinite(x)) {
        return nullptr;
    }
    return std::stod(format_number(x));
}

nlohmann::ordered_json table_json(const Table& table) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            obj[table.columns[c]] = cell_json(row[c]);
        }
        rows.push_back(std::move(obj));
    }
    return rows;
}

}  // namespace iqy::cli
