#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wqed/dynamics.hpp"
#include "wqed/errors.hpp"

using namespace wqed;

TEST_CASE("emission conserves the norm and settles on the bound-state plateau") {
    const auto m = ModelParams::single(0.5, 0.1, 1.0, 0.45, 1000);
    const auto s = solve_1q(m);
    EmissionOptions opt;
    opt.t_max = 150;
    const auto r = evolve_emission(s, m, opt);
    CHECK(r.norm_drift < 1e-10);
    CHECK(r.sigma_z_lab.front() > 0.9);
    CHECK(std::abs(r.tail_mean - r.stationary_prediction) < 1e-2);
    REQUIRE(well_inside_band(s.delta_r, m));
    const double rate = fit_decay_rate(r.times, r.qubit_population);
    CHECK(rate == doctest::Approx(spectral_density(s.delta_r, m)).epsilon(0.05));
}

TEST_CASE("emission state at t = 0 is the bare excitation") {
    const auto m = ModelParams::single(0.5, 0.2, 1.0, 0.45, 200);
    const auto st = emission_state(solve_1q(m), m, 0.0);
    CHECK(std::abs(st.beta) == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& b : st.beta_k) CHECK(std::abs(b) < 1e-12);
}

TEST_CASE("markov baseline decays from +1 to -1") {
    const auto v = markov_baseline(0.5, {0.0, 1.0, 1e3});
    CHECK(v[0] == doctest::Approx(1.0));
    CHECK(v[1] == doctest::Approx(2 * std::exp(-0.5) - 1));
    CHECK(v[2] == doctest::Approx(-1.0));
}

TEST_CASE("decay fit recovers an exponential and rejects short series") {
    std::vector<double> t, p;
    for (int i = 0; i < 100; ++i) {
        t.push_back(0.1 * i);
        p.push_back(std::exp(-0.7 * t.back()));
    }
    CHECK(fit_decay_rate(t, p) == doctest::Approx(0.7).epsilon(1e-10));
    CHECK_THROWS_AS(fit_decay_rate({0.0, 0.1}, {1.0, 0.1}), SolverError);
}

TEST_CASE("band-interior test uses the edge distance") {
    const auto m = ModelParams::single(0.5, 0.1, 1.0, 0.45, 100);
    CHECK(well_inside_band(1.0, m));
    CHECK(!well_inside_band(0.15, m));
    CHECK(!well_inside_band(0.05, m));
}

TEST_CASE("renormalized rate exceeds the bare rate below the band centre") {
    const auto m = ModelParams::single(0.5, 0.3, 1.0, 0.45, 1000);
    const auto s = solve_1q(m);
    REQUIRE(s.delta_r < 0.5);
    CHECK(markov_rate_renormalized(s, m) > markov_rate_fgr(m));
    CHECK(spectral_density(0.9, m) > spectral_density(1.0, m));
}
