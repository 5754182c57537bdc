#pragma once

#include <vector>

#include "wqed/excitation_subspace.hpp"
#include "wqed/model.hpp"
#include "wqed/polaron_single.hpp"

namespace wqed {

struct ExcitationState {
    cplx beta{1.0, 0.0};
    std::vector<cplx> beta_k;
    double time = 0;
};

struct EmissionOptions {
    double t_max = 200;
    double dt = 0.1;
    // Doubling of t_max until the variance of the last 10% drops below this, capped at N / (4 lambda).
    bool extend_to_plateau = true;
    double plateau_variance = 1e-6;
};

struct EmissionResult {
    std::vector<double> times;
    std::vector<double> sigma_z_lab;
    std::vector<double> qubit_population;  // |beta(t)|^2
    std::vector<double> markov_fgr;        // rate J(delta)
    std::vector<double> markov_renormalized;  // rate J(delta_r)
    double stationary_prediction = 0;
    double lambda0 = 0;
    double tail_mean = 0;
    double tail_variance = 0;
    double norm_drift = 0;
    double t_max_used = 0;
    bool plateau_reached = false;
    bool markov_available = false;
};

// <sigma_z> in the lab frame to second order in f for amplitudes in the polaron frame.
double lab_sigma_z(cplx beta, const std::vector<cplx>& beta_k, const PolaronSolution1Q& sol, double delta);
double lab_sigma_z(const BoundState& bs, const PolaronSolution1Q& sol, double delta);

// Exact propagation of sigma^+|GS> by eigendecomposition of the even-parity sector.
EmissionResult evolve_emission(const PolaronSolution1Q& sol, const ModelParams& model,
                               const EmissionOptions& opt = {});

// Full state at time t (all N photon amplitudes), for checks against other propagators.
ExcitationState emission_state(const PolaronSolution1Q& sol, const ModelParams& model, double t);

double stationary_value(const BoundState& bs, const PolaronSolution1Q& sol, const ModelParams& model);

// 2 exp(-rate t) - 1.
std::vector<double> markov_baseline(double rate, const std::vector<double>& times);
double markov_rate_fgr(const ModelParams& model);
double markov_rate_renormalized(const PolaronSolution1Q& sol, const ModelParams& model);

// |cos k(omega)| <= 0.8.
bool well_inside_band(double omega, const ModelParams& model);

// Least-squares slope of ln|beta|^2 from t = 0 to the first sample below 1/e; returns the rate.
double fit_decay_rate(const std::vector<double>& times, const std::vector<double>& population);

// |F(E_1)| / |E_1| for the resolvent pole of the single-excitation problem.
double resolvent_pole_residual(const BoundState& bs, const PolaronSolution1Q& sol, const ModelParams& model);

}  // namespace wqed
