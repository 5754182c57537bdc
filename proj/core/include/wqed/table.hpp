#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace wqed {

using Cell = std::variant<double, long long, std::string>;

struct ResultTable {
    std::string name;  // file stem
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::json metadata = nlohmann::json::object();  // table-specific sidecar fields

    void add(std::vector<Cell> row);
};

std::string format_cell(const Cell& c);
// RFC 4180 quoting when needed.
std::string csv_field(const std::string& s);

// Writes <dir>/<name>.csv and <dir>/<name>.json. The CSV's first line is
// "# wqed <subcommand> meta=<name>.json config_hash=<hash>".
void write_table(const std::filesystem::path& dir, const std::string& subcommand, const ResultTable& table,
                 const nlohmann::json& config, const std::string& hash);

}  // namespace wqed
