#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "doctest.h"
#include "wqed/ed_oracle.hpp"
#include "wqed/errors.hpp"
#include "wqed/excitation_subspace.hpp"
#include "wqed/numerics.hpp"
#include "wqed/polaron_single.hpp"
#include "wqed/polaron_two.hpp"

using namespace wqed;

namespace {

// Qubit x site 0 x site 1, each site truncated at n_max photons.
Eigen::MatrixXd kron_hamiltonian(double delta, double g, double w0, double lam, int n_max) {
    const int d = n_max + 1;
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(d, d);
    for (int n = 1; n < d; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
    const Eigen::MatrixXd i2 = Eigen::MatrixXd::Identity(2, 2);
    Eigen::MatrixXd sz(2, 2), sx(2, 2);
    sz << 1, 0, 0, -1;
    sx << 0, 1, 1, 0;
    const Eigen::MatrixXd b0 = Eigen::kroneckerProduct(b, id), b1 = Eigen::kroneckerProduct(id, b);
    const Eigen::MatrixXd nn = b0.transpose() * b0 + b1.transpose() * b1;
    const Eigen::MatrixXd hop = b0.transpose() * b1 + b1.transpose() * b0;
    const Eigen::MatrixXd field = Eigen::MatrixXd(Eigen::kroneckerProduct(sx, b0 + b0.transpose()));
    return 0.5 * delta * Eigen::MatrixXd(Eigen::kroneckerProduct(sz, Eigen::MatrixXd::Identity(d * d, d * d))) +
           Eigen::MatrixXd(Eigen::kroneckerProduct(i2, w0 * nn - lam * hop)) + g * field;
}

}  // namespace

TEST_CASE("ED reproduces an independent tensor-product construction") {
    auto m = ModelParams::single(0.3, 0.4, 1.0, 0.2, 2);
    m.positions = {0};
    EdConfig ed;
    ed.n_max = 6;
    ed.n_total = 12;
    const auto r = lowest_states(m, ed, 4);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kron_hamiltonian(0.3, 0.4, 1.0, 0.2, 6));
    for (int i = 0; i < 4; ++i) CHECK(r.states[static_cast<std::size_t>(i)].energy == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-10));
}

TEST_CASE("ED without coupling gives the bare ground state") {
    const auto m = ModelParams::single(0.3, 0.0, 1.0, 0.2, 8);
    const auto r = lowest_states(m, EdConfig{}, 2);
    CHECK(r.states[0].energy == doctest::Approx(-0.15).epsilon(1e-12));
    CHECK(r.states[1].energy == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(r.states[0].sigma_z[0] == doctest::Approx(-1.0));
}

TEST_CASE("Lanczos agrees with dense within a sector") {
    const auto m = ModelParams::single(0.3, 0.2, 1.0, 0.2, 6);
    EdConfig dense, lanczos;
    dense.solver = EdSolver::dense;
    lanczos.solver = EdSolver::lanczos;
    for (int parity : {-1, 1}) {
        const auto a = lowest_states_in_sector(m, dense, parity, 3);
        const auto b = lowest_states_in_sector(m, lanczos, parity, 3);
        for (int i = 0; i < 3; ++i)
            CHECK(a.states[static_cast<std::size_t>(i)].energy == doctest::Approx(b.states[static_cast<std::size_t>(i)].energy).epsilon(1e-9));
    }
}

TEST_CASE("ED ground state and first excitation lie in opposite parity sectors") {
    const auto m = ModelParams::single(0.3, 0.1, 1.0, 0.2, 10);
    const auto r = lowest_states(m, EdConfig{}, 2);
    CHECK(r.states[0].parity == ground_parity(m));
    CHECK(r.states[1].parity == -ground_parity(m));
}

TEST_CASE("ED profiles agree with the polaron single-qubit states") {
    const auto m = ModelParams::single(0.3, 0.1, 1.0, 0.2, 12);
    const auto tr = lowest_states_converged(m, EdConfig{}, 2);
    const auto s = solve_1q(m);
    const auto bs = find_bound_state_1q(s, m);
    CHECK(relative_l2(photon_distribution_gs(s, m), tr.result.states[0].photon_profile) < 0.01);
    CHECK(relative_l2(sebs_photon_distribution(bs, s, m), tr.result.states[1].photon_profile) < 0.01);
    CHECK(tr.result.states[0].energy == doctest::Approx(s.e_gs).epsilon(1e-4));
}

TEST_CASE("ED two-qubit GS profile matches the polaron cloud") {
    const auto m = ModelParams::pair(0.3, 0.1, 3, 1.0, 0.2, 12);
    const auto tr = lowest_states_converged(m, EdConfig{}, 1);
    const auto s = solve_2q(m);
    CHECK(relative_l2(photon_distribution_gs_2q(s, m), tr.result.states[0].photon_profile) < 0.01);
    CHECK(tr.result.states[0].energy == doctest::Approx(s.e_gs).epsilon(1e-4));
}

TEST_CASE("ED sigma_z agrees with the polaron expectation") {
    const auto m = ModelParams::single(0.3, 0.1, 1.0, 0.2, 10);
    const auto r = lowest_states(m, EdConfig{}, 1);
    CHECK(r.states[0].sigma_z[0] == doctest::Approx(sigma_z_gs(solve_1q(m), 0.3)).epsilon(1e-3));
}

TEST_CASE("ED refuses oversized bases") {
    const auto m = ModelParams::single(0.3, 0.1, 1.0, 0.2, 12);
    EdConfig ed;
    ed.n_max = 8;
    ed.n_total = 10;
    ed.max_states = 1000;
    CHECK_THROWS_AS(build_basis(m, ed), ConfigError);
}

TEST_CASE("ED basis and sparsity stay within the combinatorial budget") {
    const auto m = ModelParams::pair(0.3, 0.1, 3, 1.0, 0.2, 6);
    EdConfig ed;
    ed.n_max = 3;
    ed.n_total = 18;
    const auto basis = build_basis(m, ed);
    CHECK(basis.size() == static_cast<std::size_t>(4 * std::pow(4, 6)));
    const auto h = build_hamiltonian(m, basis);
    const double per_row = 1 + 2 * (m.n_sites - 1) + 2 * 2;
    CHECK(static_cast<double>(h.nonZeros()) <= per_row * static_cast<double>(basis.size()));
    const SparseH diff = SparseH(h.transpose()) - h;
    CHECK(diff.norm() < 1e-12);
}
