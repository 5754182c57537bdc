#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "wqed/config.hpp"
#include "wqed/errors.hpp"
#include "wqed/experiments.hpp"

using namespace wqed;

namespace {

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("wqed_unit_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

std::string write_json(const std::filesystem::path& dir, const std::string& text) {
    const auto p = dir / "c.json";
    std::ofstream(p) << text;
    return p.string();
}

}  // namespace

TEST_CASE("every subcommand has a complete default config") {
    for (const auto& s : subcommands()) {
        const auto c = default_config(s);
        CHECK(c.contains("model"));
        CHECK(c.contains("solver"));
    }
}

TEST_CASE("unknown keys and type mismatches are config errors") {
    const auto d = scratch("keys");
    CHECK_THROWS_AS(load_config("gs1q", write_json(d, R"({"model": {"lamda": 0.2}})"), {}), ConfigError);
    CHECK_THROWS_AS(load_config("gs1q", write_json(d, R"({"model": {"lambda": "x"}})"), {}), ConfigError);
    CHECK_THROWS_AS(load_config("gs1q", write_json(d, R"({"experiment": "gs2q"})"), {}), ConfigError);
    CHECK_THROWS_AS(load_config("gs1q", write_json(d, "{nope"), {}), ConfigError);
    CHECK_THROWS_AS(load_config("gs1q", "", {"solver.nope=1"}), ConfigError);
}

TEST_CASE("overrides use dotted paths and JSON values") {
    auto c = load_config("gs1q", "", {"model.lambda=0.3", "sweep.g=[0.2,0.1]"});
    CHECK(c["model"]["lambda"].get<double>() == doctest::Approx(0.3));
    CHECK(c["sweep"]["g"].size() == 2);
    CHECK(c["sweep"]["g"][0].get<double>() == doctest::Approx(0.1));
}

TEST_CASE("config hash ignores axis declaration order") {
    const auto a = load_config("gs2q", "", {"sweep.x=[2,5,3]", "sweep.g=[0.1,0.2]"});
    const auto b = load_config("gs2q", "", {"sweep.g=[0.2,0.1,0.1]", "sweep.x=[5,3,2]"});
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a) != config_hash(load_config("gs2q", "", {})));
}

TEST_CASE("invalid model in a sweep fails before any computation") {
    const auto c = load_config("gs1q", "", {"model.lambda=-0.1"});
    CHECK_THROWS_AS(run_experiment("gs1q", c), ConfigError);
    const auto c2 = load_config("gs2q", "", {"sweep.x=[0,3]"});
    CHECK_THROWS_AS(run_experiment("gs2q", c2), ConfigError);
}

TEST_CASE("a one-point sweep equals a single solve") {
    const auto c = load_config("gs1q", "", {"sweep.g=[0.3]", "sweep.delta=[0.3]", "model.n_sites=400"});
    const auto out = run_experiment("gs1q", c);
    REQUIRE(out.tables.size() == 1);
    REQUIRE(out.tables[0].rows.size() == 1);
    const auto s = solve_1q(ModelParams::single(0.3, 0.3, 1.0, 0.2, 400));
    CHECK(std::get<double>(out.tables[0].rows[0][2]) == s.delta_r);
    CHECK(out.flagged_points == 0);
}

TEST_CASE("non-converging points are flagged and the run continues") {
    const auto c = load_config("gs1q", "", {"sweep.g=[0.1,0.5]", "sweep.delta=[0.3]", "solver.max_iterations=1",
                                            "model.n_sites=200"});
    const auto out = run_experiment("gs1q", c);
    REQUIRE(out.tables[0].rows.size() == 2);
    CHECK(out.flagged_points == 2);
    CHECK(std::get<std::string>(out.tables[0].rows[1].back()) == "convergence_error");
    CHECK(!out.messages.empty());
}
