#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "wqed/model.hpp"

namespace wqed {

enum class EdSolver { automatic, dense, lanczos };

struct EdConfig {
    int n_max = 3;     // photons per site
    int n_total = -1;  // total photons; -1 means n_max + 2
    EdSolver solver = EdSolver::automatic;
    std::size_t max_states = 4'000'000;
    std::size_t dense_limit = 400;
    double tolerance = 1e-10;  // eigen-residual relative to the Hamiltonian norm bound
    int krylov_dim = 80;
    int max_restarts = 400;

    int total_cap() const { return n_total < 0 ? n_max + 2 : n_total; }
};

// Qubits x truncated site Fock states, restricted to one joint parity sector when parity != 0.
// A state is encoded as 4 bits per site (site n at bits 4n) plus qubit j at bit 56 + j.
struct EdBasis {
    int n_sites = 0;
    int n_qubits = 0;
    int parity = 0;  // +1, -1, or 0 for both
    std::vector<std::uint64_t> states;  // sorted

    std::size_t size() const { return states.size(); }
    std::size_t index(std::uint64_t code) const;  // size() if absent
    static int occupation(std::uint64_t code, int site) { return static_cast<int>((code >> (4 * site)) & 0xF); }
    static bool qubit_up(std::uint64_t code, int q) { return (code >> (56 + q)) & 1U; }
};

using SparseH = Eigen::SparseMatrix<double, Eigen::RowMajor>;

EdBasis build_basis(const ModelParams& model, const EdConfig& ed, int parity = 0);
// Open-chain H = sum_j delta/2 s_z + omega0 sum n - lambda sum (b_n^dag b_{n+1} + h.c.) + g_j s_x (b + b^dag).
SparseH build_hamiltonian(const ModelParams& model, const EdBasis& basis);
SparseH build_hamiltonian(const ModelParams& model, const EdConfig& ed);

struct EdState {
    double energy = 0;
    int parity = 0;
    std::vector<double> photon_profile;  // <b_n^dag b_n>
    std::vector<double> sigma_z;         // per qubit
    double residual = 0;
    Eigen::VectorXd vector;              // in the basis of its parity sector
};

struct EdResult {
    std::vector<EdState> states;  // ascending energy
    int n_max = 0;
    int n_total = 0;
    std::size_t dimension = 0;  // both sectors
    double norm_bound = 0;
};

EdResult lowest_states(const ModelParams& model, const EdConfig& ed, int m);
// Lowest m states of one parity sector.
EdResult lowest_states_in_sector(const ModelParams& model, const EdConfig& ed, int parity, int m);

struct TruncatedEdResult {
    EdResult result;
    double relative_change = 0;  // GS energy change at the last cap increase
    int bumps = 0;
};

// Raises n_max and n_total together until the GS energy changes by less than rel_tol.
TruncatedEdResult lowest_states_converged(const ModelParams& model, EdConfig ed, int m, double rel_tol = 1e-6,
                                          int max_bumps = 6);

// Parity of the vacuum-and-all-down state: (-1)^{N_q}.
int ground_parity(const ModelParams& model);

}  // namespace wqed
