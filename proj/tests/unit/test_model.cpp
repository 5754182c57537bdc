#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "wqed/errors.hpp"
#include "wqed/model.hpp"
#include "wqed/numerics.hpp"

using namespace wqed;

TEST_CASE("grid is symmetric and partners map k to -k") {
    const auto m = ModelParams::single(0.3, 0.3, 1.0, 0.2, 16);
    const MomentumGrid grid(m);
    REQUIRE(grid.size() == 16);
    CHECK(grid.k[0] == doctest::Approx(-std::numbers::pi));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::size_t p = grid.partner(i);
        CHECK(grid.partner(p) == i);
        CHECK(grid.omega[p] == doctest::Approx(grid.omega[i]).epsilon(1e-14));
    }
    CHECK(grid.omega_min() == doctest::Approx(band_bottom(m)));
    CHECK(grid.omega_max() == doctest::Approx(band_top(m)));
}

TEST_CASE("binned coupling density reproduces J(omega)") {
    const int n = 10000;
    const double g = 0.3, w0 = 1.0, lam = 0.2;
    const auto m = ModelParams::single(0.3, g, w0, lam, n);
    const MomentumGrid grid(m);
    const double c = coupling_k(g, n);
    const int bins = 40;
    const double lo = band_bottom(m), width = (band_top(m) - lo) / bins;
    std::vector<double> weight(bins, 0.0);
    for (double w : grid.omega) {
        const int b = std::min(bins - 1, static_cast<int>((w - lo) / width));
        weight[static_cast<std::size_t>(b)] += 2.0 * std::numbers::pi * c * c / width;
    }
    double worst = 0;
    for (int b = 4; b < bins - 4; ++b) {
        const double j_mid = spectral_density(lo + (b + 0.5) * width, g, w0, lam);
        worst = std::max(worst, std::abs(weight[static_cast<std::size_t>(b)] - j_mid) / j_mid);
    }
    CHECK(worst < 0.02);
    CHECK(spectral_density(w0, g, w0, lam) == doctest::Approx(g * g / lam));
}

TEST_CASE("site transform preserves the norm") {
    std::mt19937 rng(7);
    std::normal_distribution<double> dist;
    std::vector<cplx> a(64);
    double norm_k = 0;
    for (auto& v : a) {
        v = {dist(rng), dist(rng)};
        norm_k += std::norm(v);
    }
    for (double center : {32.0, 30.5}) {
        const auto an = site_amplitudes(a, center);
        double norm_n = 0;
        for (const auto& v : an) norm_n += std::norm(v);
        CHECK(norm_n == doctest::Approx(norm_k).epsilon(1e-12));
    }
}

TEST_CASE("invalid models are rejected") {
    CHECK_THROWS_AS(ModelParams::single(0.3, 0.3, 1.0, -0.2, 100).validate(), ConfigError);
    CHECK_THROWS_AS(ModelParams::single(-0.1, 0.3, 1.0, 0.2, 100).validate(), ConfigError);
    CHECK_THROWS_AS(ModelParams::single(0.3, 0.3, 1.0, 0.6, 100).validate(), ConfigError);
    CHECK_NOTHROW(ModelParams::pair(0.3, 0.3, 5, 1.0, 0.2, 100).validate());
}
