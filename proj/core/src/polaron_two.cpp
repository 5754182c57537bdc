#include "wqed/polaron_two.hpp"

#include <cmath>
#include <sstream>

#include "wqed/errors.hpp"
#include "wqed/numerics.hpp"

namespace wqed {

double PolaronSolution2Q::alpha() const { return std::cos(theta); }
double PolaronSolution2Q::beta() const { return std::sin(theta); }

void spin_gs_angles(double delta_r, double j_ising, double& cos_t, double& sin_t) {
    const double e = std::sqrt(delta_r * delta_r + j_ising * j_ising);
    const double a = delta_r + e;
    const double norm = std::sqrt(a * a + j_ising * j_ising);
    if (norm == 0) {
        cos_t = 1;
        sin_t = 0;
        return;
    }
    cos_t = a / norm;
    sin_t = j_ising / norm;
}

namespace {

struct Coupled {
    std::vector<double> f1, f2;
};

// Stationary f for fixed (dr1, dr2, J): per k a 2x2 linear system.
void inner_f(const MomentumGrid& grid, const std::vector<double>& cosx, double c1, double c2,
             double dr1, double dr2, double jj, Coupled& out) {
    const std::size_t n = grid.size();
    out.f1.resize(n);
    out.f2.resize(n);
    const double dbar = 0.5 * (dr1 + dr2);
    const double e = std::sqrt(dbar * dbar + jj * jj);
    const double r = jj / e;
    const double a1 = dbar * dr1 / e;
    const double a2 = dbar * dr2 / e;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = grid.omega[i];
        const double off = r * w * cosx[i];
        const double m11 = w + a1, m22 = w + a2;
        const double b1 = c1 + r * c2 * cosx[i];
        const double b2 = c2 + r * c1 * cosx[i];
        const double det = m11 * m22 - off * off;
        out.f1[i] = (m22 * b1 - off * b2) / det;
        out.f2[i] = (m11 * b2 - off * b1) / det;
    }
}

double sum_sq(const std::vector<double>& f) {
    long double s = 0;
    for (double v : f) s += static_cast<long double>(v) * v;
    return static_cast<double>(s);
}

double ising(const MomentumGrid& grid, const std::vector<double>& cosx, double c1, double c2,
             const Coupled& f) {
    long double s = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        s += cosx[i] * (2.0L * c2 * f.f1[i] + 2.0L * c1 * f.f2[i] -
                        2.0L * grid.omega[i] * f.f1[i] * f.f2[i]);
    return static_cast<double>(s);
}

PolaronSolution2Q iterate(const ModelParams& model, double dr1, double dr2, double jj,
                          const FixedPointOptions& opt) {
    model.validate();
    if (model.n_qubits() != 2) throw ConfigError("solve_2q: model must have exactly two qubits");
    const int x = model.positions[1] - model.positions[0];
    if (x == 0) throw ConfigError("solve_2q: qubits must be on distinct sites");
    const MomentumGrid grid(model);
    const double c1 = coupling_k(model.couplings[0], model.n_sites);
    const double c2 = coupling_k(model.couplings[1], model.n_sites);
    const double delta = model.delta;
    std::vector<double> cosx(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) cosx[i] = std::cos(grid.k[i] * x);

    Coupled f;
    int it = 0;
    double worst = 0;
    for (; it < opt.max_iterations; ++it) {
        inner_f(grid, cosx, c1, c2, dr1, dr2, jj, f);
        const double t1 = delta * std::exp(-2.0 * sum_sq(f.f1));
        const double t2 = delta * std::exp(-2.0 * sum_sq(f.f2));
        const double tj = ising(grid, cosx, c1, c2, f);
        const double s1 = t1 - dr1, s2 = t2 - dr2, sj = tj - jj;
        worst = std::max({std::abs(s1) / dr1, std::abs(s2) / dr2, std::abs(sj) / delta});
        if (worst <= opt.tolerance) {
            dr1 = t1;
            dr2 = t2;
            jj = tj;
            break;
        }
        dr1 += opt.damping * s1;
        dr2 += opt.damping * s2;
        jj += opt.damping * sj;
    }
    if (it == opt.max_iterations) {
        std::ostringstream os;
        os << "polaron_two: no convergence at delta=" << delta << " g=(" << model.couplings[0]
           << "," << model.couplings[1] << ") x=" << x;
        throw ConvergenceError(os.str(), worst);
    }
    inner_f(grid, cosx, c1, c2, dr1, dr2, jj, f);

    PolaronSolution2Q sol;
    sol.f_k = std::move(f.f1);
    sol.f2_k = std::move(f.f2);
    sol.delta_r1 = dr1;
    sol.delta_r2 = dr2;
    sol.delta_r = 0.5 * (dr1 + dr2);
    sol.j_ising = jj;
    sol.e_script = std::sqrt(sol.delta_r * sol.delta_r + jj * jj);
    double ct, st;
    spin_gs_angles(sol.delta_r, jj, ct, st);
    sol.theta = std::atan2(st, ct);
    sol.separation_x = x;
    sol.iterations = it + 1;
    Coupled fc{sol.f_k, sol.f2_k};
    sol.residual = std::max({std::abs(dr1 - delta * std::exp(-2.0 * sum_sq(sol.f_k))) / dr1,
                             std::abs(dr2 - delta * std::exp(-2.0 * sum_sq(sol.f2_k))) / dr2,
                             std::abs(jj - ising(grid, cosx, c1, c2, fc)) / delta});

    long double e = -sol.e_script;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const long double w = grid.omega[i];
        e += w * sol.f_k[i] * sol.f_k[i] - 2.0L * c1 * sol.f_k[i];
        e += w * sol.f2_k[i] * sol.f2_k[i] - 2.0L * c2 * sol.f2_k[i];
    }
    sol.e_gs = static_cast<double>(e);
    return sol;
}

}  // namespace

PolaronSolution2Q solve_2q(const ModelParams& model, const FixedPointOptions& opt) {
    model.validate();
    if (model.n_qubits() != 2) throw ConfigError("solve_2q: model must have exactly two qubits");
    // Initial guess from the isolated single-qubit solutions.
    auto one = [&](int j) {
        ModelParams m = model;
        m.couplings = {model.couplings[j]};
        m.positions = {model.positions[j]};
        return solve_1q(m, opt).delta_r;
    };
    return iterate(model, one(0), one(1), 0.0, opt);
}

PolaronSolution2Q solve_2q_from(const ModelParams& model, const PolaronSolution2Q& guess,
                                const FixedPointOptions& opt) {
    if (!(guess.delta_r1 > 0) || !(guess.delta_r2 > 0)) return solve_2q(model, opt);
    return iterate(model, guess.delta_r1, guess.delta_r2, guess.j_ising, opt);
}

double excited_probability_2q(const PolaronSolution2Q& sol, double delta) {
    const double c = std::cos(sol.theta), s = std::sin(sol.theta);
    return 1.0 - (sol.delta_r / delta) * (c * c - s * s);
}

std::vector<double> displacement_profile_2q(const PolaronSolution2Q& sol, const ModelParams& model,
                                            int qubit) {
    const auto& f = qubit == 0 ? sol.f_k : sol.f2_k;
    return site_amplitudes_real(f, static_cast<double>(model.positions.at(qubit)));
}

std::vector<double> photon_distribution_gs_2q(const PolaronSolution2Q& sol, const ModelParams& model,
                                              double coefficient) {
    const auto f1 = displacement_profile_2q(sol, model, 0);
    const auto f2 = displacement_profile_2q(sol, model, 1);
    const double ab = sol.alpha() * sol.beta();
    std::vector<double> out(f1.size());
    for (std::size_t n = 0; n < f1.size(); ++n)
        out[n] = f1[n] * f1[n] + f2[n] * f2[n] + coefficient * ab * f1[n] * f2[n];
    return out;
}

}  // namespace wqed
