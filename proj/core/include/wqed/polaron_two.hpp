#pragma once

#include <vector>

#include "wqed/model.hpp"
#include "wqed/polaron_single.hpp"

namespace wqed {

// Interference coefficient of the GS cross term 2 alpha beta ... ; App. B.5 form.
inline constexpr double kGsInterferenceCoefficient = 4.0;

// Per-qubit displacement profiles f_{jk}; qubit j's displacement carries exp(i k x_j).
// For equal couplings f_k == f2_k and delta_r1 == delta_r2 == delta_r.
struct PolaronSolution2Q {
    std::vector<double> f_k;
    std::vector<double> f2_k;
    double delta_r = 0;  // mean of the two renormalized splittings
    double delta_r1 = 0;
    double delta_r2 = 0;
    double j_ising = 0;
    double e_script = 0;  // sqrt(delta_r^2 + J^2)
    double theta = 0;
    double e_gs = 0;
    int separation_x = 0;
    int iterations = 0;
    double residual = 0;

    double alpha() const;
    double beta() const;
};

PolaronSolution2Q solve_2q(const ModelParams& model, const FixedPointOptions& opt = {});
// Warm start from a previous solution (same grid size).
PolaronSolution2Q solve_2q_from(const ModelParams& model, const PolaronSolution2Q& guess,
                                const FixedPointOptions& opt = {});

// cos(theta), sin(theta) for the even-sector spin GS of delta_r/2 (s1z + s2z) - J s1x s2x.
void spin_gs_angles(double delta_r, double j_ising, double& cos_t, double& sin_t);

double excited_probability_2q(const PolaronSolution2Q& sol, double delta);

// Site-space displacement profile of qubit j, f_{n,j}.
std::vector<double> displacement_profile_2q(const PolaronSolution2Q& sol, const ModelParams& model,
                                            int qubit);
// |f_{n,1}|^2 + |f_{n,2}|^2 + coefficient * alpha beta f_{n,1} f_{n,2}.
std::vector<double> photon_distribution_gs_2q(const PolaronSolution2Q& sol, const ModelParams& model,
                                              double coefficient = kGsInterferenceCoefficient);

}  // namespace wqed
