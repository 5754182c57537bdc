#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wqed/table.hpp"

namespace wqed {

struct RunOutcome {
    std::vector<ResultTable> tables;
    int flagged_points = 0;  // points that failed and were flagged in their rows
    std::vector<std::string> messages;
};

// Validates the resolved config for the subcommand, then computes every table.
RunOutcome run_experiment(const std::string& subcommand, const nlohmann::json& config);

// run_experiment plus output; returns 0, or 2 if any point was flagged.
// Messages for flagged points go to `log`.
int run_and_write(const std::string& subcommand, const nlohmann::json& config, const std::filesystem::path& out_dir,
                  std::ostream& log);

}  // namespace wqed
