#include "bdris/sim/table.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace bdris::sim {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::invalid_argument("Table: row width does not match header");
    }
    rows.push_back(std::move(row));
}

std::string format_cell(const Cell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        return std::to_string(*i);
    }
    if (const auto* d = std::get_if<double>(&cell)) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.12g", *d);
        return buf;
    }
    return std::get<std::string>(cell);
}

std::string render_csv(const Table& table) {
    std::string out = "# bdris-csv 1 " + table.name + "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            out += format_cell(row[c]);
        }
        out += '\n';
    }
    return out;
}

void emit_csv(const Table& table, const std::filesystem::path& path) {
    if (table.empty()) {
        throw std::runtime_error("emit_csv: refusing to write empty table '" + table.name + "'");
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("emit_csv: cannot open " + path.string());
    }
    file << render_csv(table);
    if (!file.good()) {
        throw std::runtime_error("emit_csv: write failed for " + path.string());
    }
}

}  // namespace bdris::sim
