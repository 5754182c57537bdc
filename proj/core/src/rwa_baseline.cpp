#include "wqed/rwa_baseline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "wqed/errors.hpp"

namespace wqed {

namespace {

double scale_of(const ModelParams& m) { return 10.0 * m.lambda_hop + m.delta; }

void finish(RwaBoundState& r, const ModelParams& model) {
    r.state.energy_abs = rwa_ground_energy(model) + r.state.energy;
    r.above_band = r.state.energy > band_top(model);
    r.resonance_beyond_rwa = r.above_band && !upper_bound_state_possible(model);
    if (!r.above_band) {
        const double arg = (model.omega0 - r.state.energy) / (2.0 * model.lambda_hop);
        if (arg > 1.0) {
            r.state.kappa = std::acosh(arg);
            r.state.localization_length = 1.0 / r.state.kappa;
        }
    } else {
        const double arg = (r.state.energy - model.omega0) / (2.0 * model.lambda_hop);
        if (arg > 1.0) {
            r.state.kappa = std::acosh(arg);
            r.state.localization_length = 1.0 / r.state.kappa;
        }
    }
}

RankOneProblem single_problem(const ModelParams& model, const MomentumGrid& grid) {
    RankOneProblem p;
    p.eps = model.delta;
    p.omega = grid.omega;
    p.w.assign(grid.size(), coupling_k(model.couplings[0], model.n_sites));
    p.u.assign(grid.size(), 0.0);
    return p;
}

RwaBoundState from_root(const RankOneRoot& root, double center) {
    RwaBoundState r;
    r.state.energy = root.energy;
    r.state.lambda0 = root.qubit;
    r.state.lambda_k.assign(root.photons.begin(), root.photons.end());
    r.state.center = center;
    r.state.lambda_n = site_amplitudes(r.state.lambda_k, center);
    return r;
}

detail::SectorInput pair_input(const ModelParams& model, const MomentumGrid& grid) {
    detail::SectorInput in;
    in.eps_s = in.eps_a = model.delta;
    in.s = 0;
    in.x = model.positions[1] - model.positions[0];
    in.g_tilde.assign(grid.size(), coupling_k(model.couplings[0], model.n_sites));
    in.f.assign(grid.size(), 0.0);
    return in;
}

}  // namespace

double rwa_ground_energy(const ModelParams& model) {
    return -0.5 * model.delta * static_cast<double>(model.n_qubits());
}

std::vector<RwaBoundState> rwa_bound_states(const ModelParams& model) {
    model.validate();
    const MomentumGrid grid(model);
    std::vector<RwaBoundState> out;
    if (model.n_qubits() == 1) {
        const auto p = single_problem(model, grid);
        const double center = model.positions[0];
        if (auto r = lowest_root_below(p, grid.omega_min(), scale_of(model))) out.push_back(from_root(*r, center));
        if (auto r = root_above(p, grid.omega_max(), scale_of(model))) out.push_back(from_root(*r, center));
    } else {
        if (model.couplings[0] != model.couplings[1]) return rwa_bound_states_dense(model);
        const auto in = pair_input(model, grid);
        const double center = 0.5 * (model.positions[0] + model.positions[1]);
        for (Parity par : {Parity::symmetric, Parity::antisymmetric}) {
            const auto sp = detail::build_sector(grid, in, par);
            if (auto r = lowest_root_below(sp.problem, grid.omega_min(), scale_of(model))) {
                RwaBoundState b;
                b.state = detail::sector_state(sp, *r, grid, par, center);
                out.push_back(std::move(b));
            }
            if (auto r = root_above(sp.problem, grid.omega_max(), scale_of(model))) {
                RwaBoundState b;
                b.state = detail::sector_state(sp, *r, grid, par, center);
                out.push_back(std::move(b));
            }
        }
    }
    for (auto& r : out) finish(r, model);
    std::sort(out.begin(), out.end(),
              [](const RwaBoundState& a, const RwaBoundState& b) { return a.state.energy < b.state.energy; });
    return out;
}

std::vector<RwaBoundState> rwa_bound_states_dense(const ModelParams& model) {
    model.validate();
    const double lo = band_bottom(model), hi = band_top(model);
    std::vector<RwaBoundState> out;
    if (model.n_qubits() == 1) {
        const MomentumGrid grid(model);
        const auto p = single_problem(model, grid);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.dense());
        if (es.info() != Eigen::Success) throw SolverError("rwa_bound_states_dense: eigensolver failed");
        for (Eigen::Index c = 0; c < es.eigenvalues().size(); ++c) {
            const double e = es.eigenvalues()[c];
            if (e >= lo && e <= hi) continue;
            Eigen::VectorXd v = es.eigenvectors().col(c);
            if (v[0] < 0) v = -v;
            RwaBoundState r;
            r.state.energy = e;
            r.state.lambda0 = v[0];
            r.state.lambda_k.resize(static_cast<std::size_t>(v.size() - 1));
            for (Eigen::Index i = 1; i < v.size(); ++i) r.state.lambda_k[static_cast<std::size_t>(i - 1)] = v[i];
            r.state.center = model.positions[0];
            r.state.lambda_n = site_amplitudes(r.state.lambda_k, r.state.center);
            finish(r, model);
            out.push_back(std::move(r));
        }
        return out;
    }
    const auto h = EffectiveHamiltonian2Q::rwa(model);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.dense());
    if (es.info() != Eigen::Success) throw SolverError("rwa_bound_states_dense: eigensolver failed");
    for (Eigen::Index c = 0; c < es.eigenvalues().size(); ++c) {
        const double e = es.eigenvalues()[c];
        if (e >= lo && e <= hi) continue;
        Eigen::VectorXcd v = es.eigenvectors().col(c);
        const cplx ref = std::abs(v[0]) > 1e-8 ? v[0] : v[1];
        if (std::abs(ref) > 0) v *= std::conj(ref) / std::abs(ref);
        RwaBoundState r;
        r.state.energy = e;
        r.state.lambda0 = v[0].real();
        r.state.lambda1 = v[1].real();
        const double prod = (v[0] * std::conj(v[1])).real();
        r.state.parity = std::abs(prod) < 1e-14 || prod > 0 ? Parity::symmetric : Parity::antisymmetric;
        r.state.lambda_k.resize(static_cast<std::size_t>(v.size() - 2));
        for (Eigen::Index i = 2; i < v.size(); ++i) r.state.lambda_k[static_cast<std::size_t>(i - 2)] = v[i];
        r.state.center = h.center;
        r.state.lambda_n = site_amplitudes(r.state.lambda_k, r.state.center);
        finish(r, model);
        out.push_back(std::move(r));
    }
    return out;
}

BoundState rwa_lowest_bound_state(const ModelParams& model, Parity parity) {
    for (const auto& r : rwa_bound_states(model)) {
        if (r.above_band) continue;
        if (parity == Parity::none || r.state.parity == parity) return r.state;
    }
    std::ostringstream os;
    os << "rwa_baseline: no below-band state with parity " << to_string(parity) << " at delta=" << model.delta;
    throw SolverError(os.str());
}

std::vector<double> rwa_gs_photons(const ModelParams& model) {
    return std::vector<double>(static_cast<std::size_t>(model.n_sites), 0.0);
}

std::vector<double> rwa_bound_photon_distribution(const BoundState& bs) {
    std::vector<double> out(bs.lambda_n.size());
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = std::norm(bs.lambda_n[n]);
    return out;
}

}  // namespace wqed
