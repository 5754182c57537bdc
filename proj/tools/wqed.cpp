#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wqed/config.hpp"
#include "wqed/errors.hpp"
#include "wqed/experiments.hpp"

namespace {

int fail(const std::string& sub, int code, const std::string& kind, const std::string& what) {
    std::cerr << "wqed " << sub << ": " << kind << ": " << what << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polaron and RWA calculations for qubits coupled to a coupled-cavity waveguide"};
    app.require_subcommand(1, 1);

    struct Args {
        std::string config;
        std::vector<std::string> overrides;
        std::string out;
        bool print_defaults = false;
    };
    std::vector<Args> args(wqed::subcommands().size());
    for (std::size_t i = 0; i < args.size(); ++i) {
        auto* sc = app.add_subcommand(wqed::subcommands()[i]);
        sc->add_option("--config", args[i].config, "JSON config file (defaults are used when omitted)");
        sc->add_option("--set", args[i].overrides, "override a dotted key, e.g. --set model.lambda=0.3")
            ->take_all()
            ->allow_extra_args(false);
        sc->add_option("--out", args[i].out, "output directory");
        sc->add_flag("--print-config", args[i].print_defaults, "print the resolved config and exit");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    std::size_t which = 0;
    while (!app.got_subcommand(wqed::subcommands()[which])) ++which;
    const std::string sub = wqed::subcommands()[which];
    const Args& a = args[which];

    try {
        const wqed::json cfg = wqed::load_config(sub, a.config, a.overrides);
        if (a.print_defaults) {
            std::cout << cfg.dump(2) << '\n';
            return 0;
        }
        if (a.out.empty()) throw wqed::ConfigError("--out is required");
        return wqed::run_and_write(sub, cfg, std::filesystem::path(a.out), std::cerr);
    } catch (const wqed::ConfigError& e) {
        return fail(sub, 1, "config error", e.what());
    } catch (const wqed::ConvergenceError& e) {
        return fail(sub, 2, "convergence error", e.what());
    } catch (const wqed::SolverError& e) {
        return fail(sub, 3, "solver error", e.what());
    } catch (const wqed::DomainError& e) {
        return fail(sub, 3, "domain error", e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return fail(sub, 1, "output error", e.what());
    } catch (const std::exception& e) {
        return fail(sub, 3, "error", e.what());
    }
}
