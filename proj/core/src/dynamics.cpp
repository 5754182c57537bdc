#include "wqed/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "wqed/errors.hpp"

namespace wqed {

namespace {

// Even-parity reduction of the single-qubit problem; the initial state lives entirely in it.
struct EvenSector {
    RankOneProblem problem;
    std::vector<std::size_t> mode_k, mode_partner;
};

EvenSector even_sector(const PolaronSolution1Q& sol, const ModelParams& model) {
    const MomentumGrid grid(model);
    const auto full = EffectiveHamiltonian1Q(sol, model).problem();
    EvenSector es;
    es.problem.eps = full.eps;
    es.problem.s = full.s;
    const double r2 = std::numbers::sqrt2;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::size_t j = grid.partner(i);
        if (j != i && !(grid.k[i] > 0)) continue;
        const double m = j == i ? 1.0 : r2;
        es.problem.omega.push_back(full.omega[i]);
        es.problem.w.push_back(m * full.w[i]);
        es.problem.u.push_back(m * full.u[i]);
        es.mode_k.push_back(i);
        es.mode_partner.push_back(j);
    }
    return es;
}

struct Spectrum {
    Eigen::VectorXd energy;
    Eigen::MatrixXd vectors;
};

Spectrum diagonalize(const RankOneProblem& p) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.dense());
    if (es.info() != Eigen::Success) throw SolverError("dynamics: eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

struct Series {
    std::vector<double> times, sz, pop;
    double norm_drift = 0;
};

Series propagate(const Spectrum& sp, const EvenSector& sec, double ratio, double t_max, double dt) {
    const Eigen::Index n = sp.energy.size();
    std::vector<double> c(static_cast<std::size_t>(n)), d(static_cast<std::size_t>(n));
    for (Eigen::Index a = 0; a < n; ++a) {
        const double v0 = sp.vectors(0, a);
        double uv = 0;
        for (Eigen::Index m = 1; m < n; ++m) uv += sec.problem.u[static_cast<std::size_t>(m - 1)] * sp.vectors(m, a);
        c[static_cast<std::size_t>(a)] = v0 * v0;
        d[static_cast<std::size_t>(a)] = v0 * uv;
    }
    Series s;
    const auto steps = static_cast<std::size_t>(std::llround(t_max / dt));
    s.times.resize(steps + 1);
    s.sz.resize(steps + 1);
    s.pop.resize(steps + 1);
    const std::size_t checkpoints = 32;
    const std::size_t stride = std::max<std::size_t>(1, steps / checkpoints);
    Eigen::VectorXcd coef(n);
    for (std::size_t it = 0; it <= steps; ++it) {
        const double t = static_cast<double>(it) * dt;
        cplx beta = 0, sum = 0;
        for (Eigen::Index a = 0; a < n; ++a) {
            const cplx ph = std::polar(1.0, -sp.energy[a] * t);
            beta += c[static_cast<std::size_t>(a)] * ph;
            sum += d[static_cast<std::size_t>(a)] * ph;
            coef[a] = sp.vectors(0, a) * ph;
        }
        const double p = std::norm(beta);
        s.times[it] = t;
        s.pop[it] = p;
        s.sz[it] = ratio * (p - (1.0 - p) + 4.0 * (std::conj(beta) * sum).real() + 4.0 * std::norm(sum));
        if (it % stride == 0 || it == steps) {
            const Eigen::VectorXcd psi = sp.vectors.cast<cplx>() * coef;
            s.norm_drift = std::max(s.norm_drift, std::abs(psi.squaredNorm() - 1.0));
        }
    }
    return s;
}

}  // namespace

double lab_sigma_z(cplx beta, const std::vector<cplx>& beta_k, const PolaronSolution1Q& sol, double delta) {
    cplx sum = 0;
    double photons = 0;
    for (std::size_t i = 0; i < beta_k.size(); ++i) {
        sum += sol.f_k[i] * beta_k[i];
        photons += std::norm(beta_k[i]);
    }
    return sol.delta_r / delta *
           (std::norm(beta) - photons + 4.0 * (std::conj(beta) * sum).real() + 4.0 * std::norm(sum));
}

double lab_sigma_z(const BoundState& bs, const PolaronSolution1Q& sol, double delta) {
    return lab_sigma_z(cplx(bs.lambda0, 0.0), bs.lambda_k, sol, delta);
}

double stationary_value(const BoundState& bs, const PolaronSolution1Q& sol, const ModelParams& model) {
    const double l2 = bs.lambda0 * bs.lambda0;
    return l2 * lab_sigma_z(bs, sol, model.delta) - (1.0 - l2) * sol.delta_r / model.delta;
}

EmissionResult evolve_emission(const PolaronSolution1Q& sol, const ModelParams& model, const EmissionOptions& opt) {
    if (!(opt.dt > 0) || !(opt.t_max > 0)) throw ConfigError("evolve_emission: t_max and dt must be positive");
    const auto sec = even_sector(sol, model);
    const auto sp = diagonalize(sec.problem);
    const double ratio = sol.delta_r / model.delta;
    const double cap = model.n_sites / (4.0 * model.lambda_hop);

    EmissionResult r;
    double t_max = opt.extend_to_plateau ? std::min(opt.t_max, cap) : opt.t_max;
    Series s;
    for (;;) {
        s = propagate(sp, sec, ratio, t_max, opt.dt);
        const std::size_t n = s.sz.size();
        const std::size_t first = n - std::max<std::size_t>(1, n / 10);
        double mean = 0, var = 0;
        for (std::size_t i = first; i < n; ++i) mean += s.sz[i];
        mean /= static_cast<double>(n - first);
        for (std::size_t i = first; i < n; ++i) var += (s.sz[i] - mean) * (s.sz[i] - mean);
        var /= static_cast<double>(n - first);
        r.tail_mean = mean;
        r.tail_variance = var;
        r.plateau_reached = var < opt.plateau_variance;
        if (!opt.extend_to_plateau || r.plateau_reached || t_max >= cap) break;
        t_max = std::min(2.0 * t_max, cap);
    }
    r.t_max_used = t_max;
    r.times = std::move(s.times);
    r.sigma_z_lab = std::move(s.sz);
    r.qubit_population = std::move(s.pop);
    r.norm_drift = s.norm_drift;

    try {
        const auto bs = find_bound_state_1q(sol, model);
        r.lambda0 = bs.lambda0;
        r.stationary_prediction = stationary_value(bs, sol, model);
    } catch (const SolverError&) {
        r.lambda0 = 0;
        r.stationary_prediction = -ratio;
    }
    const double lo = band_bottom(model), hi = band_top(model);
    auto inside = [&](double w) { return w > lo && w < hi; };
    if (inside(model.delta) && inside(sol.delta_r)) {
        r.markov_available = true;
        r.markov_fgr = markov_baseline(markov_rate_fgr(model), r.times);
        r.markov_renormalized = markov_baseline(markov_rate_renormalized(sol, model), r.times);
    }
    return r;
}

ExcitationState emission_state(const PolaronSolution1Q& sol, const ModelParams& model, double t) {
    const auto sec = even_sector(sol, model);
    const auto sp = diagonalize(sec.problem);
    const Eigen::Index n = sp.energy.size();
    Eigen::VectorXcd coef(n);
    for (Eigen::Index a = 0; a < n; ++a) coef[a] = sp.vectors(0, a) * std::polar(1.0, -sp.energy[a] * t);
    const Eigen::VectorXcd psi = sp.vectors.cast<cplx>() * coef;
    ExcitationState st;
    st.time = t;
    st.beta = psi[0];
    st.beta_k.assign(static_cast<std::size_t>(model.n_sites), 0.0);
    const double r2 = std::numbers::sqrt2;
    for (std::size_t m = 0; m < sec.mode_k.size(); ++m) {
        const cplx b = psi[static_cast<Eigen::Index>(m + 1)];
        const std::size_t i = sec.mode_k[m], j = sec.mode_partner[m];
        if (i == j) {
            st.beta_k[i] = b;
        } else {
            st.beta_k[i] = b / r2;
            st.beta_k[j] = b / r2;
        }
    }
    return st;
}

std::vector<double> markov_baseline(double rate, const std::vector<double>& times) {
    std::vector<double> out(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) out[i] = 2.0 * std::exp(-rate * times[i]) - 1.0;
    return out;
}

double markov_rate_fgr(const ModelParams& model) { return spectral_density(model.delta, model); }

double markov_rate_renormalized(const PolaronSolution1Q& sol, const ModelParams& model) {
    return spectral_density(sol.delta_r, model);
}

bool well_inside_band(double omega, const ModelParams& model) {
    const double cosk = (model.omega0 - omega) / (2.0 * model.lambda_hop);
    return std::abs(cosk) <= 0.8;
}

double fit_decay_rate(const std::vector<double>& times, const std::vector<double>& population) {
    const double threshold = std::exp(-1.0);
    std::vector<double> x, y;
    for (std::size_t i = 0; i < times.size() && i < population.size(); ++i) {
        if (population[i] < threshold) break;
        x.push_back(times[i]);
        y.push_back(std::log(population[i]));
    }
    if (x.size() < 3) throw SolverError("fit_decay_rate: fewer than 3 samples before 1/e");
    return -fit_line(x, y).slope;
}

double resolvent_pole_residual(const BoundState& bs, const PolaronSolution1Q& sol, const ModelParams& model) {
    const auto p = EffectiveHamiltonian1Q(sol, model).problem();
    return std::abs(p.secular(bs.energy)) / std::max(std::abs(bs.energy), 1e-300);
}

}  // namespace wqed
