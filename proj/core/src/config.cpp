#include "wqed/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "wqed/errors.hpp"
#include "wqed/numerics.hpp"

namespace wqed {

namespace {

json g_range(double lo, double hi, double step) {
    json a = json::array();
    const int n = static_cast<int>(std::llround((hi - lo) / step));
    for (int i = 0; i <= n; ++i) a.push_back(std::round((lo + step * i) * 1e12) / 1e12);
    return a;
}

json base_model() {
    return {{"delta", 0.3}, {"omega0", 1.0}, {"lambda", 0.2}, {"g", 0.3}, {"n_sites", 2000}};
}

json base_solver() { return {{"damping", 0.5}, {"tolerance", 1e-12}, {"max_iterations", 100000}}; }

}  // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> s{"gs1q",     "bound1q", "gsphotons", "benchmark-ed",
                                            "emission", "gs2q",    "bound2q",   "transfer"};
    return s;
}

json default_config(const std::string& sub) {
    json c;
    c["model"] = base_model();
    c["solver"] = base_solver();
    if (sub == "gs1q") {
        c["sweep"] = {{"g", g_range(0.0, 0.5, 0.05)}, {"delta", {0.1, 0.3, 0.5, 1.0}}};
    } else if (sub == "bound1q") {
        c["sweep"] = {{"g", g_range(0.01, 0.5, 0.01)}, {"delta", {0.1, 0.3, 0.5, 1.0}}};
        c["profiles"] = {{"g", {0.3}}, {"delta", {0.1, 0.3, 0.5, 1.0}}, {"half_width", 30}};
    } else if (sub == "gsphotons") {
        c["model"]["g"] = 0.5;
        c["sweep"] = {{"g", {0.5}}, {"delta", {0.3}}, {"x", {5, 15}}};
        c["profiles"] = {{"half_width", 40}};
    } else if (sub == "benchmark-ed") {
        c["model"]["n_sites"] = 12;
        c["sweep"] = {{"g", {0.05, 0.1, 0.2}}, {"delta", {0.3}}};
        c["ed"] = {{"n_max", 3}, {"n_total", 5}, {"max_states", 4000000}, {"truncation_tolerance", 1e-6},
                   {"max_bumps", 6}, {"solver", "automatic"}};
    } else if (sub == "emission") {
        c["model"]["lambda"] = 0.45;
        c["sweep"] = {{"g", {0.3}}, {"delta", {0.3, 0.5}}};
        c["dynamics"] = {{"t_max", 200.0}, {"dt", 0.1}, {"extend_to_plateau", true},
                         {"plateau_variance", 1e-6}, {"output_stride", 10}};
    } else if (sub == "gs2q") {
        c["sweep"] = {{"g", g_range(0.05, 0.5, 0.05)}, {"delta", {0.3}}, {"x", {2, 3, 4, 5, 6, 8, 10, 12, 15, 20}}};
    } else if (sub == "bound2q") {
        c["model"]["omega0"] = 0.6;
        c["model"]["lambda"] = 0.228;
        c["sweep"] = {{"g", {0.3}}, {"delta", {0.3}},
                      {"x", {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20}}};
        c["profiles"] = {{"x", {6, 12, 20}}, {"half_width", 30}};
    } else if (sub == "transfer") {
        c["model"]["n_sites"] = 128;
        c["model"]["x"] = 5;
        c["protocol"] = {{"ramp_factor", 50.0}, {"hold", "tuned"}, {"dt", 2.0}, {"sample_every", 100},
                         {"adiabatic_threshold", 0.1}, {"krylov_tolerance", 1e-12}};
    } else {
        throw ConfigError("config: unknown subcommand '" + sub + "'");
    }
    if (sub == "gs2q" || sub == "bound2q" || sub == "gsphotons") c["model"]["x"] = 5;
    return c;
}

namespace {

void merge_into(json& target, const json& user, const std::string& path) {
    if (!user.is_object()) throw ConfigError("config: '" + (path.empty() ? std::string("<root>") : path) + "' must be an object");
    for (auto it = user.begin(); it != user.end(); ++it) {
        const std::string key = path.empty() ? it.key() : path + "." + it.key();
        if (!target.contains(it.key())) throw ConfigError("config: unknown key '" + key + "'");
        json& slot = target[it.key()];
        if (slot.is_object()) {
            merge_into(slot, it.value(), key);
            continue;
        }
        const json& v = it.value();
        const bool ok = (slot.is_number() && v.is_number()) || (slot.is_boolean() && v.is_boolean()) ||
                        (slot.is_array() && v.is_array()) || (slot.is_string() && (v.is_string() || v.is_number()));
        if (!ok) throw ConfigError("config: key '" + key + "' has the wrong type");
        slot = v;
    }
}

}  // namespace

json merge_config(const json& defaults, const json& user) {
    json out = defaults;
    merge_into(out, user, "");
    return out;
}

void apply_override(json& config, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("config: override '" + assignment + "' is not key=value");
    const std::string path = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    json patch = value;
    std::vector<std::string> keys;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        keys.push_back(path.substr(start, dot - start));
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    for (auto it = keys.rbegin(); it != keys.rend(); ++it) {
        if (it->empty()) throw ConfigError("config: override path '" + path + "' is malformed");
        patch = json{{*it, patch}};
    }
    config = merge_config(config, patch);
}

json load_config(const std::string& sub, const std::string& path, const std::vector<std::string>& overrides) {
    json config = default_config(sub);
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("config: cannot open '" + path + "'");
        json user = json::parse(in, nullptr, false, true);
        if (user.is_discarded()) throw ConfigError("config: '" + path + "' is not valid JSON");
        if (user.contains("experiment")) {
            if (user["experiment"] != sub)
                throw ConfigError("config: file is for experiment '" + user["experiment"].dump() + "', not '" + sub + "'");
            user.erase("experiment");
        }
        config = merge_config(config, user);
    }
    for (const auto& o : overrides) apply_override(config, o);
    // axes are sets: their declaration order must not reach the output
    for (const char* block : {"sweep", "profiles"}) {
        if (!config.contains(block)) continue;
        for (auto& [key, v] : config[block].items()) {
            if (!v.is_array()) continue;
            if (!std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number(); })) continue;
            std::vector<json> vals(v.begin(), v.end());
            std::sort(vals.begin(), vals.end(), [](const json& a, const json& b) { return a.get<double>() < b.get<double>(); });
            vals.erase(std::unique(vals.begin(), vals.end(),
                                   [](const json& a, const json& b) { return a.get<double>() == b.get<double>(); }),
                       vals.end());
            v = vals;
        }
    }
    return config;
}

std::string canonical(const json& config) { return config.dump(); }

std::string config_hash(const json& config) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical(config))));
    return buf;
}

namespace {

double num(const json& block, const char* key) {
    const auto& v = block.at(key);
    if (!v.is_number()) throw ConfigError(std::string("config: '") + key + "' must be a number");
    return v.get<double>();
}

int integer(const json& block, const char* key) {
    const double v = num(block, key);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(std::string("config: '") + key + "' must be an integer");
    return static_cast<int>(v);
}

}  // namespace

ModelParams model_from(const json& block, double delta, double g, int n_qubits, int x) {
    const double omega0 = num(block, "omega0");
    const double lambda = num(block, "lambda");
    const int n = integer(block, "n_sites");
    ModelParams m = n_qubits == 1 ? ModelParams::single(delta, g, omega0, lambda, n)
                                  : ModelParams::pair(delta, g, x, omega0, lambda, n);
    if (n_qubits == 2 && x <= 0) throw ConfigError("config: separation x must be a positive integer");
    m.validate();
    return m;
}

FixedPointOptions solver_from(const json& config) {
    const auto& s = config.at("solver");
    FixedPointOptions o;
    o.damping = num(s, "damping");
    o.tolerance = num(s, "tolerance");
    o.max_iterations = integer(s, "max_iterations");
    if (!(o.damping > 0 && o.damping <= 1)) throw ConfigError("config: solver.damping must be in (0, 1]");
    if (!(o.tolerance > 0)) throw ConfigError("config: solver.tolerance must be > 0");
    if (o.max_iterations < 1) throw ConfigError("config: solver.max_iterations must be >= 1");
    return o;
}

EdConfig ed_from(const json& block) {
    EdConfig e;
    e.n_max = integer(block, "n_max");
    e.n_total = integer(block, "n_total");
    e.max_states = static_cast<std::size_t>(num(block, "max_states"));
    const std::string solver = block.at("solver").get<std::string>();
    if (solver == "automatic")
        e.solver = EdSolver::automatic;
    else if (solver == "dense")
        e.solver = EdSolver::dense;
    else if (solver == "lanczos")
        e.solver = EdSolver::lanczos;
    else
        throw ConfigError("config: ed.solver must be automatic, dense or lanczos");
    if (e.n_max < 2) throw ConfigError("config: ed.n_max must be >= 2");
    return e;
}

std::vector<double> axis(const json& values, const std::string& name) {
    if (!values.is_array() || values.empty()) throw ConfigError("config: sweep axis '" + name + "' must be a non-empty list");
    std::vector<double> out;
    for (const auto& v : values) {
        if (!v.is_number()) throw ConfigError("config: sweep axis '" + name + "' must contain numbers");
        out.push_back(v.get<double>());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> int_axis(const json& values, const std::string& name) {
    std::vector<int> out;
    for (double v : axis(values, name)) {
        if (v != std::floor(v)) throw ConfigError("config: sweep axis '" + name + "' must contain integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

}  // namespace wqed
