#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(WQED_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

fs::path fresh(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("wqed_cli_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("malformed config exits 1 and writes nothing") {
    const auto out = fresh("bad");
    CHECK(run("gs1q --set model.lambda=-0.2 --out " + out.string()) == 1);
    CHECK(!fs::exists(out));
    CHECK(run("gs1q --set model.nope=1 --out " + out.string()) == 1);
    CHECK(run("gs1q --config /nonexistent.json --out " + out.string()) == 1);
    CHECK(!fs::exists(out));
}

TEST_CASE("non-converging points exit 2 with flagged rows") {
    const auto out = fresh("flag");
    CHECK(run("gs1q --set solver.max_iterations=1 --set 'sweep.g=[0.3]' --set model.n_sites=200 --out " + out.string()) == 2);
    CHECK(slurp(out / "gs1q.csv").find("convergence_error") != std::string::npos);
}

TEST_CASE("identical configs produce identical bytes, in any axis order") {
    const auto a = fresh("det_a"), b = fresh("det_b"), c = fresh("det_c");
    const std::string base = "gs2q --set model.n_sites=400 ";
    REQUIRE(run(base + "--set 'sweep.x=[2,4,8]' --set 'sweep.g=[0.1,0.3]' --out " + a.string()) == 0);
    REQUIRE(run(base + "--set 'sweep.x=[2,4,8]' --set 'sweep.g=[0.1,0.3]' --out " + b.string()) == 0);
    REQUIRE(run(base + "--set 'sweep.g=[0.3,0.1]' --set 'sweep.x=[8,2,4]' --out " + c.string()) == 0);
    for (const char* f : {"gs2q.csv", "gs2q.json"}) {
        CHECK(slurp(a / f) == slurp(b / f));
        CHECK(slurp(a / f) == slurp(c / f));
    }
}

TEST_CASE("csv header points at its sidecar") {
    const auto out = fresh("header");
    REQUIRE(run("gs1q --set 'sweep.g=[0.1]' --set model.n_sites=200 --out " + out.string()) == 0);
    const std::string csv = slurp(out / "gs1q.csv");
    CHECK(csv.rfind("# wqed gs1q meta=gs1q.json config_hash=", 0) == 0);
    CHECK(csv.find("delta,g,delta_r,delta_r_ratio,p_e,e_gs") != std::string::npos);
    CHECK(slurp(out / "gs1q.json").find("\"n_sites\": 200") != std::string::npos);
}
