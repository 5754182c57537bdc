#include "wqed/polaron_single.hpp"

#include <cmath>
#include <sstream>

#include "wqed/errors.hpp"
#include "wqed/numerics.hpp"

namespace wqed {

namespace {

void fill_f(const MomentumGrid& grid, double c, double delta_r, std::vector<double>& f) {
    f.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) f[i] = c / (delta_r + grid.omega[i]);
}

double sum_sq(const std::vector<double>& f) {
    long double s = 0;
    for (double v : f) s += static_cast<long double>(v) * v;
    return static_cast<double>(s);
}

}  // namespace

PolaronSolution1Q solve_1q_from(const ModelParams& model, double delta_r_guess,
                                const FixedPointOptions& opt) {
    model.validate();
    if (model.n_qubits() != 1) throw ConfigError("solve_1q: model must have exactly one qubit");
    const MomentumGrid grid(model);
    const double c = coupling_k(model.couplings[0], model.n_sites);
    const double delta = model.delta;

    PolaronSolution1Q sol;
    double dr = (delta_r_guess > 0 && delta_r_guess <= delta) ? delta_r_guess : delta;
    std::vector<double> f;
    int it = 0;
    double step = 0;
    for (; it < opt.max_iterations; ++it) {
        fill_f(grid, c, dr, f);
        const double target = delta * std::exp(-2.0 * sum_sq(f));
        step = target - dr;
        if (std::abs(step) <= opt.tolerance * dr) {
            dr = target;
            break;
        }
        dr += opt.damping * step;
    }
    if (it == opt.max_iterations) {
        std::ostringstream os;
        os << "polaron_single: no convergence at delta=" << delta << " g=" << model.couplings[0]
           << " after " << it << " iterations";
        throw ConvergenceError(os.str(), std::abs(step));
    }
    fill_f(grid, c, dr, f);
    sol.f_k = std::move(f);
    sol.delta_r = dr;
    sol.iterations = it + 1;
    sol.residual = std::abs(dr - delta * std::exp(-2.0 * sum_sq(sol.f_k)));

    long double e = -0.5L * dr;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const long double fi = sol.f_k[i];
        e += grid.omega[i] * fi * fi - 2.0L * c * fi;
    }
    sol.e_gs = static_cast<double>(e);
    sol.e_zp = sol.e_gs;
    return sol;
}

PolaronSolution1Q solve_1q(const ModelParams& model, const FixedPointOptions& opt) {
    return solve_1q_from(model, model.delta, opt);
}

double variational_energy_1q(const ModelParams& model, const std::vector<double>& f_k) {
    const MomentumGrid grid(model);
    const double c = coupling_k(model.couplings.at(0), model.n_sites);
    long double e = -0.5L * model.delta * std::exp(-2.0 * sum_sq(f_k));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const long double fi = f_k[i];
        e += grid.omega[i] * fi * fi - 2.0L * c * fi;
    }
    return static_cast<double>(e);
}

double excited_probability(const PolaronSolution1Q& sol, double delta) {
    return 0.5 * (1.0 - sol.delta_r / delta);
}

double sigma_z_gs(const PolaronSolution1Q& sol, double delta) { return -sol.delta_r / delta; }

std::vector<double> gs_displacement_profile(const PolaronSolution1Q& sol, const ModelParams& model) {
    return site_amplitudes_real(sol.f_k, static_cast<double>(model.positions.at(0)));
}

std::vector<double> photon_distribution_gs(const PolaronSolution1Q& sol, const ModelParams& model) {
    auto f = gs_displacement_profile(sol, model);
    for (double& v : f) v *= v;
    return f;
}

double gs_kappa(const PolaronSolution1Q& sol, const ModelParams& model) {
    const double arg = (model.omega0 + sol.delta_r) / (2.0 * model.lambda_hop);
    if (!(arg > 1.0)) throw DomainError("gs_localization_length: arccosh argument <= 1");
    return std::acosh(arg);
}

double gs_localization_length(const PolaronSolution1Q& sol, const ModelParams& model) {
    return 1.0 / gs_kappa(sol, model);
}

}  // namespace wqed
