#include <cmath>
#include <random>

#include "doctest.h"
#include "wqed/excitation_subspace.hpp"
#include "wqed/numerics.hpp"
#include "wqed/polaron_single.hpp"
#include "wqed/polaron_two.hpp"

using namespace wqed;

TEST_CASE("zero coupling leaves the bare qubit") {
    const auto m = ModelParams::single(0.3, 0.0, 1.0, 0.2, 200);
    const auto s = solve_1q(m);
    CHECK(s.delta_r == doctest::Approx(0.3));
    CHECK(s.e_gs == doctest::Approx(-0.15));
    CHECK(excited_probability(s, 0.3) == doctest::Approx(0.0));
    for (double f : s.f_k) CHECK(f == 0.0);
}

TEST_CASE("single-qubit fixed point invariants") {
    for (double g : {0.1, 0.3, 0.5}) {
        const auto m = ModelParams::single(0.3, g, 1.0, 0.2, 400);
        const auto s = solve_1q(m);
        double sum_f2 = 0;
        for (double f : s.f_k) sum_f2 += f * f;
        CHECK(s.delta_r == doctest::Approx(0.3 * std::exp(-2 * sum_f2)).epsilon(1e-11));
        CHECK(s.delta_r < 0.3);
        CHECK(s.delta_r > 0);
        CHECK(s.e_gs == doctest::Approx(variational_energy_1q(m, s.f_k)).epsilon(1e-12));
        CHECK(sigma_z_gs(s, 0.3) < 0);
    }
}

TEST_CASE("fixed point is a variational minimum") {
    const auto m = ModelParams::single(0.3, 0.3, 1.0, 0.2, 200);
    const auto s = solve_1q(m);
    const MomentumGrid grid(m);
    std::mt19937 rng(3);
    std::normal_distribution<double> dist;
    const double e0 = variational_energy_1q(m, s.f_k);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = s.f_k;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const std::size_t p = grid.partner(i);
            if (p < i) continue;
            const double h = 1e-3 * dist(rng);
            f[i] += h;
            if (p != i) f[p] += h;
        }
        CHECK(variational_energy_1q(m, f) > e0);
    }
}

TEST_CASE("renormalized splitting and GS energy fall with g") {
    double prev_dr = 1, prev_e = 1;
    for (int i = 0; i <= 10; ++i) {
        const double g = 0.05 * i;
        const auto s = solve_1q(ModelParams::single(0.3, g, 1.0, 0.2, 400));
        CHECK(s.delta_r <= prev_dr);
        CHECK(s.e_gs <= prev_e);
        prev_dr = s.delta_r;
        prev_e = s.e_gs;
    }
}

TEST_CASE("variational GS is an eigenstate to first order") {
    const auto m = ModelParams::single(0.5, 0.3, 1.0, 0.2, 400);
    CHECK(variational_gs_is_eigenstate(solve_1q(m), m) < 1e-10);
    const auto m2 = ModelParams::pair(0.5, 0.3, 5, 1.0, 0.2, 400);
    CHECK(variational_gs_is_eigenstate(solve_2q(m2), m2) < 1e-10);
}

TEST_CASE("distant qubits decouple") {
    const auto s1 = solve_1q(ModelParams::single(0.3, 0.3, 1.0, 0.2, 400));
    const auto near = solve_2q(ModelParams::pair(0.3, 0.3, 2, 1.0, 0.2, 400));
    const auto far = solve_2q(ModelParams::pair(0.3, 0.3, 30, 1.0, 0.2, 400));
    CHECK(std::abs(far.j_ising) < 1e-10);
    CHECK(far.delta_r == doctest::Approx(s1.delta_r).epsilon(1e-8));
    CHECK(far.e_gs == doctest::Approx(2 * s1.e_gs).epsilon(1e-8));
    CHECK(near.j_ising > far.j_ising);
    CHECK(near.delta_r < s1.delta_r);
}

TEST_CASE("unequal couplings reduce to known limits") {
    const auto eq = solve_2q(ModelParams::pair(0.3, 0.3, 4, 1.0, 0.2, 400));
    const auto gen = solve_2q(ModelParams::pair(0.3, 0.3, 0.3, 4, 1.0, 0.2, 400));
    CHECK(gen.delta_r == doctest::Approx(eq.delta_r).epsilon(1e-10));
    CHECK(gen.j_ising == doctest::Approx(eq.j_ising).epsilon(1e-8));

    const auto s1 = solve_1q(ModelParams::single(0.3, 0.3, 1.0, 0.2, 400));
    const auto half = solve_2q(ModelParams::pair(0.3, 0.3, 0.0, 4, 1.0, 0.2, 400));
    CHECK(half.delta_r1 == doctest::Approx(s1.delta_r).epsilon(1e-9));
    CHECK(half.delta_r2 == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(std::abs(half.j_ising) < 1e-12);
}

TEST_CASE("two-qubit GS profile is symmetric about the midpoint") {
    const auto m = ModelParams::pair(0.3, 0.3, 6, 1.0, 0.2, 200);
    const auto p = photon_distribution_gs_2q(solve_2q(m), m);
    const int a = m.positions[0], b = m.positions[1];
    for (int d = 0; d < 20; ++d) CHECK(p[static_cast<std::size_t>(a - d)] == doctest::Approx(p[static_cast<std::size_t>(b + d)]).epsilon(1e-10));
}

TEST_CASE("splitting agrees with the scalar fixed point with f eliminated") {
    const auto m = ModelParams::single(0.3, 0.05, 1.0, 0.2, 2000);
    const MomentumGrid grid(m);
    const double c2 = std::pow(coupling_k(0.05, m.n_sites), 2);
    auto rhs = [&](double dr) {
        double sum = 0;
        for (double w : grid.omega) sum += c2 / ((dr + w) * (dr + w));
        return 0.3 * std::exp(-2 * sum);
    };
    double lo = 1e-6, hi = 0.3;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (rhs(mid) > mid ? lo : hi) = mid;
    }
    const auto s = solve_1q(m);
    CHECK(s.delta_r == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-11));
    double first = 0;
    for (double w : grid.omega) first += c2 / ((0.3 + w) * (0.3 + w));
    CHECK(s.delta_r == doctest::Approx(0.3 * (1 - 2 * first)).epsilon(1e-4));
}

TEST_CASE("renormalized splitting regression at N = 2000") {
    const double r3 = solve_1q(ModelParams::single(0.3, 0.3)).delta_r / 0.3;
    const double r5 = solve_1q(ModelParams::single(0.3, 0.5)).delta_r / 0.3;
    CHECK(r3 == doctest::Approx(0.87610574188332846).epsilon(1e-9));
    CHECK(r5 == doctest::Approx(0.65964505212110536).epsilon(1e-9));
    CHECK(r5 < r3);
    CHECK(r5 > 0);
}

TEST_CASE("Ising coupling decays exponentially with separation") {
    std::vector<double> xs, ys;
    for (int x = 2; x <= 12; ++x) {
        xs.push_back(x);
        ys.push_back(std::log(std::abs(solve_2q(ModelParams::pair(0.3, 0.3, x)).j_ising)));
    }
    const auto fit = fit_line(xs, ys);
    double ss_res = 0, ss_tot = 0, mean = 0;
    for (double y : ys) mean += y / static_cast<double>(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        ss_res += std::pow(ys[i] - fit.slope * xs[i] - fit.intercept, 2);
        ss_tot += std::pow(ys[i] - mean, 2);
    }
    CHECK(1 - ss_res / ss_tot > 0.999);
    CHECK(fit.slope == doctest::Approx(-1.7342202882072844).epsilon(1e-6));
}
