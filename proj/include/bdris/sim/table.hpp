#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace bdris::sim {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Column-labelled result rows. Cells render deterministically: integers in
/// full, doubles with 12 significant digits, strings verbatim.
struct Table {
    std::string name;  // appears in the schema comment line
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
    bool empty() const noexcept { return rows.empty(); }
};

std::string format_cell(const Cell& cell);

/// CSV text: a `# bdris-csv 1 <name>` schema line, the header, then rows.
std::string render_csv(const Table& table);

/// Writes render_csv(table) to `path`. An empty table is an error and no file
/// is created; I/O failures raise std::runtime_error.
void emit_csv(const Table& table, const std::filesystem::path& path);

}  // namespace bdris::sim
