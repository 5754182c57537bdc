#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wqed/model.hpp"
#include "wqed/numerics.hpp"
#include "wqed/polaron_single.hpp"
#include "wqed/polaron_two.hpp"

namespace wqed {

// Real symmetric problem on {qubit} + photon modes:
//   H = [[eps, w^T], [w, diag(omega) + s u u^T]].
// Eigenvalues below all photon energies satisfy F(E) = E - eps + w^T (P - E)^{-1} w = 0,
// with F strictly increasing there.
struct RankOneProblem {
    double eps = 0;
    std::vector<double> omega;
    std::vector<double> w;
    std::vector<double> u;
    double s = 0;

    double secular(double e) const;
    // (P - E)^{-1} w for E outside the photon spectrum.
    std::vector<double> resolvent_w(double e) const;
    // Limit of F as E approaches edge from below; edge <= min(omega). +inf if divergent.
    double secular_at_edge(double edge) const;
    Eigen::MatrixXd dense() const;
};

struct RankOneRoot {
    double energy = 0;
    double qubit = 0;              // amplitude on the qubit
    std::vector<double> photons;   // amplitudes on the photon modes
    int iterations = 0;
};

// Lowest root below edge, or nullopt if F(edge^-) <= 0 (no state below the edge).
std::optional<RankOneRoot> lowest_root_below(const RankOneProblem& p, double edge, double scale);
// Root above edge >= max(omega) for s == 0 problems (RWA upper state).
std::optional<RankOneRoot> root_above(const RankOneProblem& p, double edge, double scale);

enum class Parity { none, symmetric, antisymmetric };
std::string to_string(Parity p);

struct BoundState {
    double energy = 0;      // excitation energy above the GS (E_1 - E_GS)
    double energy_abs = 0;  // including the GS energy
    double lambda0 = 0;
    double lambda1 = 0;
    std::vector<cplx> lambda_k;
    std::vector<cplx> lambda_n;
    Parity parity = Parity::none;
    double kappa = 0;
    double localization_length = 0;
    double center = 0;  // site about which lambda_n is expressed
};

struct EffectiveHamiltonian1Q {
    double delta_r = 0;
    double e_zp = 0;
    std::vector<double> omega;
    std::vector<double> f;

    EffectiveHamiltonian1Q(const PolaronSolution1Q& sol, const ModelParams& model);
    RankOneProblem problem() const;
    Eigen::MatrixXd dense() const;
};

// General (possibly unequal couplings) two-qubit effective Hamiltonian in the basis
// {|10>|0>, |01>|0>, |GS>|1_k>}, photon phases relative to the qubit midpoint.
struct EffectiveHamiltonian2Q {
    double q_diag1 = 0, q_diag2 = 0, q_off = 0;
    std::vector<double> omega;
    std::vector<cplx> w1, w2;  // qubit-photon couplings <k|H|q_j>
    std::vector<cplx> v1, v2;  // photon-photon rank-one vectors
    double s1 = 0, s2 = 0;
    double center = 0;

    EffectiveHamiltonian2Q(const PolaronSolution2Q& sol, const ModelParams& model);
    static EffectiveHamiltonian2Q rwa(const ModelParams& model);

    std::size_t dim() const { return omega.size() + 2; }
    Eigen::MatrixXcd dense() const;
    void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const;
    double norm_bound() const;

private:
    EffectiveHamiltonian2Q() = default;
};

BoundState find_bound_state_1q(const PolaronSolution1Q& sol, const ModelParams& model);
// Dense oracle: lowest eigenpair of the (N+1) matrix.
BoundState find_bound_state_1q_dense(const PolaronSolution1Q& sol, const ModelParams& model);

std::vector<double> sebs_photon_distribution(const BoundState& bs, const PolaronSolution1Q& sol,
                                             const ModelParams& model);
double sebs_kappa(const BoundState& bs, const ModelParams& model);
double sebs_localization_length(const BoundState& bs, const PolaronSolution1Q& sol,
                                const ModelParams& model);
bool upper_bound_state_possible(const ModelParams& model);

// Bound states below the band, ascending in energy.
std::vector<BoundState> find_bound_states_2q(const PolaronSolution2Q& sol, const ModelParams& model);
// Dense oracle over the full complex matrix.
std::vector<BoundState> find_bound_states_2q_dense(const PolaronSolution2Q& sol,
                                                   const ModelParams& model);

std::vector<double> bound_photon_distribution_2q(const BoundState& bs, const PolaronSolution2Q& sol,
                                                 const ModelParams& model);

double variational_gs_is_eigenstate(const PolaronSolution1Q& sol, const ModelParams& model);
double variational_gs_is_eigenstate(const PolaronSolution2Q& sol, const ModelParams& model);

namespace detail {

// Parity-sector reduction of a two-qubit problem with mirror-symmetric couplings.
struct SectorProblem {
    RankOneProblem problem;
    std::vector<std::size_t> mode_k;        // representative grid index per sector mode
    std::vector<std::size_t> mode_partner;  // partner index, equal to mode_k for self-paired modes
};

struct SectorInput {
    double eps_s = 0, eps_a = 0;
    std::vector<double> g_tilde;  // real coupling amplitude per k (before phases)
    std::vector<double> f;        // photon-photon amplitude per k
    double s = 0;
    int x = 0;
};

SectorProblem build_sector(const MomentumGrid& grid, const SectorInput& in, Parity parity);
BoundState sector_state(const SectorProblem& sp, const RankOneRoot& root, const MomentumGrid& grid,
                        Parity parity, double center);
std::vector<BoundState> sector_bound_states(const MomentumGrid& grid, const SectorInput& in,
                                            double scale, double center);

}  // namespace detail

}  // namespace wqed
