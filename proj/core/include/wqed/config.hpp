#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wqed/ed_oracle.hpp"
#include "wqed/model.hpp"
#include "wqed/polaron_single.hpp"

namespace wqed {

using json = nlohmann::json;

const std::vector<std::string>& subcommands();

// Full default configuration for a subcommand; every accepted key appears in it.
json default_config(const std::string& subcommand);

// Overlays user onto defaults; keys absent from defaults are rejected with ConfigError.
json merge_config(const json& defaults, const json& user);

// "a.b.c=value"; value parsed as JSON, falling back to a string.
void apply_override(json& config, const std::string& assignment);

json load_config(const std::string& subcommand, const std::string& path, const std::vector<std::string>& overrides);

// Canonical dump used for hashing and echoing.
std::string canonical(const json& config);
std::string config_hash(const json& config);

// Model block -> ModelParams for one qubit at N/2, or two qubits at separation x around N/2.
ModelParams model_from(const json& model_block, double delta, double g, int n_qubits, int x = 0);
FixedPointOptions solver_from(const json& config);
EdConfig ed_from(const json& ed_block);

// Sorted, de-duplicated copy of a numeric axis.
std::vector<double> axis(const json& values, const std::string& name);
std::vector<int> int_axis(const json& values, const std::string& name);

}  // namespace wqed
