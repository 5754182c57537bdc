#include "wqed/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "wqed/errors.hpp"

#ifndef WQED_VERSION
#define WQED_VERSION "unknown"
#endif

namespace wqed {

void ResultTable::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw SolverError("table '" + name + "': row width does not match the header");
    rows.push_back(std::move(row));
}

std::string format_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (std::isnan(*d)) return "nan";
        if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", *d);
        return buf;
    }
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    return csv_field(std::get<std::string>(c));
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

void write_table(const std::filesystem::path& dir, const std::string& subcommand, const ResultTable& table,
                 const nlohmann::json& config, const std::string& hash) {
    std::filesystem::create_directories(dir);
    const std::string meta_name = table.name + ".json";
    {
        std::ofstream out(dir / (table.name + ".csv"), std::ios::binary);
        if (!out) throw ConfigError("output: cannot write " + (dir / (table.name + ".csv")).string());
        out << "# wqed " << subcommand << " meta=" << meta_name << " config_hash=" << hash << "\n";
        for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_field(table.columns[i]);
        out << "\n";
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
            out << "\n";
        }
    }
    nlohmann::json meta;
    meta["subcommand"] = subcommand;
    meta["table"] = table.name;
    meta["version"] = WQED_VERSION;
    meta["config_hash"] = hash;
    meta["config"] = config;
    meta["columns"] = table.columns;
    meta["rows"] = table.rows.size();
    meta["metadata"] = table.metadata;
    std::ofstream out(dir / meta_name, std::ios::binary);
    if (!out) throw ConfigError("output: cannot write " + (dir / meta_name).string());
    out << meta.dump(2) << "\n";
}

}  // namespace wqed
