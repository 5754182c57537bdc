#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wqed/errors.hpp"
#include "wqed/state_transfer.hpp"

using namespace wqed;

TEST_CASE("tight-binding parameters from the bound doublet") {
    BoundState s, a;
    s.energy = 0.1;
    s.parity = Parity::symmetric;
    a.energy = 0.14;
    a.parity = Parity::antisymmetric;
    const auto tb = extract_tight_binding(s, a);
    CHECK(tb.epsilon == doctest::Approx(0.12));
    CHECK(std::abs(tb.tau) == doctest::Approx(0.02));
    const auto [lo, hi] = tb.eigenvalues();
    CHECK(lo == doctest::Approx(0.1));
    CHECK(hi == doctest::Approx(0.14));
    CHECK_THROWS_AS(extract_tight_binding(std::vector<BoundState>{s}), SolverError);
}

TEST_CASE("tight-binding hold of pi / (2 tau) transfers the excitation") {
    TightBinding tb;
    tb.epsilon = 0.2;
    tb.tau = 0.01;
    const double hold = std::numbers::pi / (2 * tb.tau);
    const auto r = simulate_tight_binding(tb, ProtocolSchedule::standard(0.3, 500, hold), 0.5);
    CHECK(r.fidelity > 0.999);
    const auto half = simulate_tight_binding(tb, ProtocolSchedule::standard(0.3, 500, hold / 2), 0.5);
    CHECK(half.fidelity == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("standard schedule shape") {
    const auto p = ProtocolSchedule::standard(0.3, 100, 50);
    REQUIRE(p.segments.size() == 5);
    CHECK(p.total_time() == doctest::Approx(250));
    CHECK(p.couplings_at(0).first == doctest::Approx(0));
    CHECK(p.couplings_at(100).first == doctest::Approx(0.3));
    CHECK(p.couplings_at(120).second == doctest::Approx(0.3));
    CHECK(p.couplings_at(250).second == doctest::Approx(0));
    CHECK_NOTHROW(p.validate());
    auto bad = p;
    bad.segments[0].duration = -1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("ramp shape names round-trip") {
    for (auto s : {RampShape::linear, RampShape::smoothstep, RampShape::instantaneous})
        CHECK(ramp_shape_from_string(to_string(s)) == s);
    CHECK_THROWS_AS(ramp_shape_from_string("cubic"), ConfigError);
}

TEST_CASE("equal-coupling oscillation period matches the doublet splitting") {
    const auto m = ModelParams::pair(0.3, 0.3, 3, 1.0, 0.2, 64);
    const auto tb = extract_tight_binding(find_bound_states_2q(solve_2q(m), m));
    const auto eq = equal_coupling_dynamics(m, 0.3);
    CHECK(eq.rabi_period == doctest::Approx(std::numbers::pi / std::abs(tb.tau)).epsilon(0.05));
    CHECK(eq.first_max_population > 0.9);
}

TEST_CASE("slow ramps pass the adiabaticity check") {
    const auto m = ModelParams::pair(0.3, 0.3, 5, 1.0, 0.2, 64);
    for (const auto& s : adiabaticity_check(ProtocolSchedule::standard(0.3, 1e4, 100), m)) CHECK(!s.violates);
    bool any = false;
    for (const auto& s : adiabaticity_check(ProtocolSchedule::standard(0.3, 0.01, 100), m)) any = any || s.violates;
    CHECK(any);
}

TEST_CASE("no transfer when the second qubit stays decoupled") {
    const auto m = ModelParams::pair(0.3, 0.3, 5, 1.0, 0.2, 64);
    ProtocolSchedule p;
    p.segments = {
        {"load", 200, RampShape::smoothstep, RampShape::linear, 0.3, 0.0},
        {"hold", 500, RampShape::linear, RampShape::linear, 0.3, 0.0},
        {"unload", 200, RampShape::smoothstep, RampShape::linear, 0.0, 0.0},
    };
    TransferOptions opt;
    opt.dt = 1.0;
    const auto r = simulate_protocol(m, p, opt);
    CHECK(r.fidelity < 1e-6);
    CHECK(r.norm_drift < 1e-6);
    CHECK(r.population_left.back() > 0.99);
}
