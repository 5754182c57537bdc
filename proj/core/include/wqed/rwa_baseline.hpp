#pragma once

#include <vector>

#include "wqed/excitation_subspace.hpp"
#include "wqed/model.hpp"

namespace wqed {

struct RwaBoundState {
    BoundState state;  // energy relative to the RWA ground state |g...g, 0>
    bool above_band = false;
    // Above-band state that does not survive beyond the RWA (omega0 < 4 lambda).
    bool resonance_beyond_rwa = false;
};

// Single-excitation eigenstates outside the band, ascending in energy.
std::vector<RwaBoundState> rwa_bound_states(const ModelParams& model);
// Dense oracle over the (N + N_q) matrix.
std::vector<RwaBoundState> rwa_bound_states_dense(const ModelParams& model);

// Lowest below-band RWA state (1q: its SEBS; 2q: symmetric or antisymmetric as requested).
BoundState rwa_lowest_bound_state(const ModelParams& model, Parity parity = Parity::none);

double rwa_ground_energy(const ModelParams& model);

std::vector<double> rwa_gs_photons(const ModelParams& model);
// |lambda_n|^2; the RWA dressing has no displacement cloud.
std::vector<double> rwa_bound_photon_distribution(const BoundState& bs);

}  // namespace wqed
