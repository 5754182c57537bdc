#pragma once

#include <vector>

#include "wqed/model.hpp"

namespace wqed {

struct FixedPointOptions {
    double damping = 0.5;
    double tolerance = 1e-12;  // relative, on delta_r
    int max_iterations = 100000;
};

struct PolaronSolution1Q {
    std::vector<double> f_k;
    double delta_r = 0;
    double e_gs = 0;
    double e_zp = 0;  // -delta_r/2 + sum f (omega f - 2 c)
    int iterations = 0;
    double residual = 0;  // |delta_r - delta exp(-2 sum f^2)|
};

PolaronSolution1Q solve_1q(const ModelParams& model, const FixedPointOptions& opt = {});

// Same fixed point, started from a known delta_r (warm start for parameter ramps).
PolaronSolution1Q solve_1q_from(const ModelParams& model, double delta_r_guess,
                                const FixedPointOptions& opt = {});

// E(f) = -delta exp(-2 sum f^2)/2 + sum omega f^2 - 2 sum c f for an arbitrary even f.
double variational_energy_1q(const ModelParams& model, const std::vector<double>& f_k);

double excited_probability(const PolaronSolution1Q& sol, double delta);
double sigma_z_gs(const PolaronSolution1Q& sol, double delta);

// f_n with the qubit at the model position.
std::vector<double> gs_displacement_profile(const PolaronSolution1Q& sol, const ModelParams& model);
// <b_n^dag b_n> = f_n^2.
std::vector<double> photon_distribution_gs(const PolaronSolution1Q& sol, const ModelParams& model);

double gs_kappa(const PolaronSolution1Q& sol, const ModelParams& model);
double gs_localization_length(const PolaronSolution1Q& sol, const ModelParams& model);

}  // namespace wqed
