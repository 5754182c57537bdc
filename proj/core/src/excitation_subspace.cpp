#include "wqed/excitation_subspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "wqed/errors.hpp"

namespace wqed {

namespace {

struct Sums {
    long double a = 0, b = 0, c = 0;
};

Sums sums_at(const RankOneProblem& p, double e, std::size_t skip = static_cast<std::size_t>(-1)) {
    Sums s;
    for (std::size_t i = 0; i < p.omega.size(); ++i) {
        if (i == skip) continue;
        const long double r = 1.0L / (static_cast<long double>(p.omega[i]) - e);
        const long double wi = p.w[i], ui = p.u[i];
        s.a += wi * wi * r;
        s.b += wi * ui * r;
        s.c += ui * ui * r;
    }
    return s;
}

}  // namespace

double RankOneProblem::secular(double e) const {
    const Sums t = sums_at(*this, e);
    const long double g = t.a - s * t.b * t.b / (1.0L + s * t.c);
    return static_cast<double>(static_cast<long double>(e) - eps + g);
}

std::vector<double> RankOneProblem::resolvent_w(double e) const {
    const Sums t = sums_at(*this, e);
    const long double coef = s * t.b / (1.0L + s * t.c);
    std::vector<double> y(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) {
        const long double r = 1.0L / (static_cast<long double>(omega[i]) - e);
        y[i] = static_cast<double>(w[i] * r - coef * u[i] * r);
    }
    return y;
}

double RankOneProblem::secular_at_edge(double edge) const {
    std::size_t at = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < omega.size(); ++i)
        if (std::abs(omega[i] - edge) <= 1e-13 * std::max(1.0, std::abs(edge))) at = i;
    if (at == static_cast<std::size_t>(-1)) return secular(edge);
    const Sums t = sums_at(*this, edge, at);
    const long double w0 = w[at], u0 = u[at];
    long double g;
    if (w0 != 0 && s * u0 == 0) return std::numeric_limits<double>::infinity();
    if (w0 == 0 && s * u0 != 0)
        g = t.a;
    else if (w0 == 0)
        g = t.a - s * t.b * t.b / (1.0L + s * t.c);
    else
        g = t.a - 2.0L * w0 * t.b / u0 + w0 * w0 * (1.0L + s * t.c) / (s * u0 * u0);
    return static_cast<double>(static_cast<long double>(edge) - eps + g);
}

Eigen::MatrixXd RankOneProblem::dense() const {
    const Eigen::Index n = static_cast<Eigen::Index>(omega.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
    m(0, 0) = eps;
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i + 1, 0) = m(0, i + 1) = w[i];
        m(i + 1, i + 1) = omega[i];
        for (Eigen::Index j = 0; j < n; ++j) m(i + 1, j + 1) += s * u[i] * u[j];
    }
    return m;
}

namespace {

RankOneRoot finish_root(const RankOneProblem& p, double lo, double hi, int iters) {
    double e = 0.5 * (lo + hi);
    for (int polish = 0; polish < 3; ++polish) {
        const auto y = p.resolvent_w(e);
        long double f = static_cast<long double>(e) - p.eps, d = 1;
        for (std::size_t i = 0; i < y.size(); ++i) {
            f += static_cast<long double>(p.w[i]) * y[i];
            d += static_cast<long double>(y[i]) * y[i];
        }
        const double next = static_cast<double>(e - f / d);
        if (!(next > lo && next < hi)) break;
        e = next;
    }
    RankOneRoot r;
    r.energy = e;
    r.iterations = iters;
    auto y = p.resolvent_w(e);
    long double nrm = 1;
    for (double v : y) nrm += static_cast<long double>(v) * v;
    const double a = static_cast<double>(1.0L / std::sqrt(nrm));
    r.qubit = a;
    r.photons.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) r.photons[i] = -a * y[i];
    return r;
}

}  // namespace

std::optional<RankOneRoot> lowest_root_below(const RankOneProblem& p, double edge, double scale) {
    if (!(p.secular_at_edge(edge) > 0)) return std::nullopt;
    double hi = edge;
    double width = std::max(scale, 1e-3);
    double lo = edge - width;
    int guard = 0;
    while (p.secular(lo) >= 0) {
        width *= 2;
        lo = edge - width;
        if (++guard > 200) throw SolverError("lowest_root_below: failed to bracket the root");
    }
    int it = 0;
    for (; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (p.secular(mid) < 0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15 * std::max(1.0, std::abs(lo))) break;
    }
    return finish_root(p, lo, hi, it);
}

std::optional<RankOneRoot> root_above(const RankOneProblem& p, double edge, double scale) {
    if (p.s != 0) throw SolverError("root_above: only number-conserving (s = 0) problems");
    double f_edge;
    std::size_t at = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < p.omega.size(); ++i)
        if (std::abs(p.omega[i] - edge) <= 1e-13 * std::max(1.0, std::abs(edge))) at = i;
    if (at != static_cast<std::size_t>(-1) && p.w[at] != 0)
        f_edge = -std::numeric_limits<double>::infinity();
    else {
        const Sums t = sums_at(p, edge, at);
        f_edge = static_cast<double>(static_cast<long double>(edge) - p.eps + t.a);
    }
    if (!(f_edge < 0)) return std::nullopt;
    double lo = edge;
    double width = std::max(scale, 1e-3);
    double hi = edge + width;
    int guard = 0;
    while (p.secular(hi) <= 0) {
        width *= 2;
        hi = edge + width;
        if (++guard > 200) throw SolverError("root_above: failed to bracket the root");
    }
    int it = 0;
    for (; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (p.secular(mid) < 0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15 * std::max(1.0, std::abs(lo))) break;
    }
    return finish_root(p, lo, hi, it);
}

std::string to_string(Parity p) {
    switch (p) {
        case Parity::symmetric: return "symmetric";
        case Parity::antisymmetric: return "antisymmetric";
        default: return "none";
    }
}

EffectiveHamiltonian1Q::EffectiveHamiltonian1Q(const PolaronSolution1Q& sol, const ModelParams& model)
    : delta_r(sol.delta_r), e_zp(sol.e_zp), omega(MomentumGrid(model).omega), f(sol.f_k) {}

RankOneProblem EffectiveHamiltonian1Q::problem() const {
    RankOneProblem p;
    p.eps = delta_r;
    p.omega = omega;
    p.u = f;
    p.s = 2.0 * delta_r;
    p.w.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) p.w[i] = 2.0 * delta_r * f[i];
    return p;
}

Eigen::MatrixXd EffectiveHamiltonian1Q::dense() const { return problem().dense(); }

EffectiveHamiltonian2Q::EffectiveHamiltonian2Q(const PolaronSolution2Q& sol, const ModelParams& model) {
    const MomentumGrid grid(model);
    const std::size_t n = grid.size();
    center = 0.5 * (model.positions[0] + model.positions[1]);
    const double ct = std::cos(sol.theta);
    const double cos2t = std::cos(2.0 * sol.theta);
    const double half = 0.5 * (sol.delta_r1 - sol.delta_r2);
    q_diag1 = sol.e_script + half;
    q_diag2 = sol.e_script - half;
    q_off = -sol.j_ising;
    omega = grid.omega;
    s1 = 2.0 * sol.delta_r1 * cos2t;
    s2 = 2.0 * sol.delta_r2 * cos2t;
    w1.resize(n);
    w2.resize(n);
    v1.resize(n);
    v2.resize(n);
    const double c1 = coupling_k(model.couplings[0], model.n_sites);
    const double c2 = coupling_k(model.couplings[1], model.n_sites);
    const double x1 = model.positions[0] - center, x2 = model.positions[1] - center;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx p1 = std::polar(1.0, -grid.k[i] * x1);
        const cplx p2 = std::polar(1.0, -grid.k[i] * x2);
        w1[i] = ct * (c1 - (omega[i] - sol.delta_r1) * sol.f_k[i]) * p1;
        w2[i] = ct * (c2 - (omega[i] - sol.delta_r2) * sol.f2_k[i]) * p2;
        v1[i] = sol.f_k[i] * p1;
        v2[i] = sol.f2_k[i] * p2;
    }
}

EffectiveHamiltonian2Q EffectiveHamiltonian2Q::rwa(const ModelParams& model) {
    EffectiveHamiltonian2Q h;
    const MomentumGrid grid(model);
    const std::size_t n = grid.size();
    h.center = 0.5 * (model.positions[0] + model.positions[1]);
    h.q_diag1 = h.q_diag2 = model.delta;
    h.q_off = 0;
    h.omega = grid.omega;
    h.w1.resize(n);
    h.w2.resize(n);
    h.v1.assign(n, 0.0);
    h.v2.assign(n, 0.0);
    const double c1 = coupling_k(model.couplings[0], model.n_sites);
    const double c2 = coupling_k(model.couplings[1], model.n_sites);
    const double x1 = model.positions[0] - h.center, x2 = model.positions[1] - h.center;
    for (std::size_t i = 0; i < n; ++i) {
        h.w1[i] = c1 * std::polar(1.0, -grid.k[i] * x1);
        h.w2[i] = c2 * std::polar(1.0, -grid.k[i] * x2);
    }
    return h;
}

Eigen::MatrixXcd EffectiveHamiltonian2Q::dense() const {
    const Eigen::Index n = static_cast<Eigen::Index>(omega.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n + 2, n + 2);
    m(0, 0) = q_diag1;
    m(1, 1) = q_diag2;
    m(0, 1) = m(1, 0) = q_off;
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i + 2, 0) = w1[i];
        m(0, i + 2) = std::conj(w1[i]);
        m(i + 2, 1) = w2[i];
        m(1, i + 2) = std::conj(w2[i]);
        m(i + 2, i + 2) = omega[i];
        for (Eigen::Index j = 0; j < n; ++j)
            m(i + 2, j + 2) += s1 * v1[i] * std::conj(v1[j]) + s2 * v2[i] * std::conj(v2[j]);
    }
    return m;
}

void EffectiveHamiltonian2Q::apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
    const std::size_t n = omega.size();
    y.resize(static_cast<Eigen::Index>(n + 2));
    cplx d1 = 0, d2 = 0, p1 = 0, p2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx xi = x[static_cast<Eigen::Index>(i + 2)];
        d1 += std::conj(w1[i]) * xi;
        d2 += std::conj(w2[i]) * xi;
        p1 += std::conj(v1[i]) * xi;
        p2 += std::conj(v2[i]) * xi;
    }
    y[0] = q_diag1 * x[0] + q_off * x[1] + d1;
    y[1] = q_off * x[0] + q_diag2 * x[1] + d2;
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Index r = static_cast<Eigen::Index>(i + 2);
        y[r] = w1[i] * x[0] + w2[i] * x[1] + omega[i] * x[r] + s1 * v1[i] * p1 + s2 * v2[i] * p2;
    }
}

double EffectiveHamiltonian2Q::norm_bound() const {
    double om = 0, ww = 0, vv1 = 0, vv2 = 0;
    for (std::size_t i = 0; i < omega.size(); ++i) {
        om = std::max(om, std::abs(omega[i]));
        ww += std::norm(w1[i]) + std::norm(w2[i]);
        vv1 += std::norm(v1[i]);
        vv2 += std::norm(v2[i]);
    }
    return om + std::abs(s1) * vv1 + std::abs(s2) * vv2 + std::sqrt(ww) +
           std::max(std::abs(q_diag1), std::abs(q_diag2)) + std::abs(q_off);
}

namespace {

double bracket_scale(const ModelParams& m) { return 10.0 * m.lambda_hop + m.delta; }

void fill_localization(BoundState& bs, const ModelParams& model) {
    const double arg = (model.omega0 - bs.energy) / (2.0 * model.lambda_hop);
    if (arg > 1.0) {
        bs.kappa = std::acosh(arg);
        bs.localization_length = 1.0 / bs.kappa;
    }
}

}  // namespace

BoundState find_bound_state_1q(const PolaronSolution1Q& sol, const ModelParams& model) {
    const EffectiveHamiltonian1Q h(sol, model);
    const auto p = h.problem();
    const double edge = band_bottom(model);
    auto root = lowest_root_below(p, edge, bracket_scale(model));
    if (!root) {
        std::ostringstream os;
        os << "excitation_subspace: no bound state below the band at delta=" << model.delta
           << " g=" << model.couplings[0];
        throw SolverError(os.str());
    }
    BoundState bs;
    bs.energy = root->energy;
    bs.energy_abs = sol.e_gs + root->energy;
    bs.lambda0 = root->qubit;
    bs.lambda_k.assign(root->photons.begin(), root->photons.end());
    bs.center = model.positions[0];
    bs.lambda_n = site_amplitudes(bs.lambda_k, bs.center);
    fill_localization(bs, model);
    return bs;
}

BoundState find_bound_state_1q_dense(const PolaronSolution1Q& sol, const ModelParams& model) {
    const EffectiveHamiltonian1Q h(sol, model);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense());
    if (es.info() != Eigen::Success) throw SolverError("find_bound_state_1q_dense: eigensolver failed");
    Eigen::VectorXd v = es.eigenvectors().col(0);
    if (v[0] < 0) v = -v;
    BoundState bs;
    bs.energy = es.eigenvalues()[0];
    bs.energy_abs = sol.e_gs + bs.energy;
    bs.lambda0 = v[0];
    bs.lambda_k.resize(static_cast<std::size_t>(v.size() - 1));
    for (Eigen::Index i = 1; i < v.size(); ++i) bs.lambda_k[static_cast<std::size_t>(i - 1)] = v[i];
    bs.center = model.positions[0];
    bs.lambda_n = site_amplitudes(bs.lambda_k, bs.center);
    fill_localization(bs, model);
    return bs;
}

std::vector<double> sebs_photon_distribution(const BoundState& bs, const PolaronSolution1Q& sol,
                                             const ModelParams& model) {
    const auto phi = gs_displacement_profile(sol, model);
    std::vector<double> out(phi.size());
    for (std::size_t n = 0; n < phi.size(); ++n) {
        const double ln = bs.lambda_n[n].real();
        out[n] = phi[n] * phi[n] + std::norm(bs.lambda_n[n]) - 2.0 * bs.lambda0 * phi[n] * ln;
    }
    return out;
}

double sebs_kappa(const BoundState& bs, const ModelParams& model) {
    const double arg = (model.omega0 - bs.energy) / (2.0 * model.lambda_hop);
    if (!(arg > 1.0)) throw DomainError("sebs_localization_length: state is not below the band");
    return std::acosh(arg);
}

double sebs_localization_length(const BoundState& bs, const PolaronSolution1Q& sol,
                                const ModelParams& model) {
    return std::max(1.0 / gs_kappa(sol, model), 1.0 / sebs_kappa(bs, model));
}

bool upper_bound_state_possible(const ModelParams& model) {
    return model.omega0 >= 4.0 * model.lambda_hop;
}

namespace detail {

SectorProblem build_sector(const MomentumGrid& grid, const SectorInput& in, Parity parity) {
    SectorProblem sp;
    auto& p = sp.problem;
    p.eps = parity == Parity::symmetric ? in.eps_s : in.eps_a;
    p.s = in.s;
    const std::size_t n = grid.size();
    const double r2 = std::numbers::sqrt2;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = grid.partner(i);
        const double half = 0.5 * grid.k[i] * in.x;
        const double cs = std::cos(half), sn = std::sin(half);
        if (j == i) {
            const bool sym = std::abs(cs) > std::abs(sn);
            if (sym != (parity == Parity::symmetric)) continue;
            const double amp = sym ? cs : sn;
            p.omega.push_back(grid.omega[i]);
            p.w.push_back(r2 * in.g_tilde[i] * amp);
            p.u.push_back(r2 * in.f[i] * amp);
            sp.mode_k.push_back(i);
            sp.mode_partner.push_back(i);
        } else if (grid.k[i] > 0) {
            const double amp = parity == Parity::symmetric ? cs : sn;
            p.omega.push_back(grid.omega[i]);
            p.w.push_back(2.0 * in.g_tilde[i] * amp);
            p.u.push_back(2.0 * in.f[i] * amp);
            sp.mode_k.push_back(i);
            sp.mode_partner.push_back(j);
        }
    }
    return sp;
}

BoundState sector_state(const SectorProblem& sp, const RankOneRoot& root, const MomentumGrid& grid,
                        Parity parity, double center) {
    BoundState bs;
    bs.energy = root.energy;
    bs.parity = parity;
    const double r2 = std::numbers::sqrt2;
    bs.lambda0 = root.qubit / r2;
    bs.lambda1 = parity == Parity::symmetric ? root.qubit / r2 : -root.qubit / r2;
    bs.lambda_k.assign(grid.size(), 0.0);
    const cplx phase = parity == Parity::symmetric ? cplx(1, 0) : cplx(0, 1);
    for (std::size_t m = 0; m < sp.mode_k.size(); ++m) {
        const std::size_t i = sp.mode_k[m], j = sp.mode_partner[m];
        const double a = root.photons[m];
        if (i == j) {
            bs.lambda_k[i] = phase * a;
        } else {
            bs.lambda_k[i] = phase * (a / r2);
            bs.lambda_k[j] = (parity == Parity::symmetric ? phase : -phase) * (a / r2);
        }
    }
    bs.center = center;
    bs.lambda_n = site_amplitudes(bs.lambda_k, center);
    return bs;
}

std::vector<BoundState> sector_bound_states(const MomentumGrid& grid, const SectorInput& in,
                                            double scale, double center) {
    std::vector<BoundState> out;
    const double edge = grid.omega_min();
    for (Parity par : {Parity::symmetric, Parity::antisymmetric}) {
        const auto sp = build_sector(grid, in, par);
        auto root = lowest_root_below(sp.problem, edge, scale);
        if (root) out.push_back(sector_state(sp, *root, grid, par, center));
    }
    std::sort(out.begin(), out.end(),
              [](const BoundState& a, const BoundState& b) { return a.energy < b.energy; });
    return out;
}

}  // namespace detail

std::vector<BoundState> find_bound_states_2q(const PolaronSolution2Q& sol, const ModelParams& model) {
    if (model.n_qubits() != 2) throw ConfigError("find_bound_states_2q: two qubits required");
    if (model.couplings[0] != model.couplings[1]) return find_bound_states_2q_dense(sol, model);
    const MomentumGrid grid(model);
    const double c = coupling_k(model.couplings[0], model.n_sites);
    const double ct = std::cos(sol.theta);
    detail::SectorInput in;
    in.eps_s = sol.e_script - sol.j_ising;
    in.eps_a = sol.e_script + sol.j_ising;
    in.s = 2.0 * sol.delta_r * std::cos(2.0 * sol.theta);
    in.x = sol.separation_x;
    in.f = sol.f_k;
    in.g_tilde.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        in.g_tilde[i] = ct * (c - (grid.omega[i] - sol.delta_r) * sol.f_k[i]);
    const double center = 0.5 * (model.positions[0] + model.positions[1]);
    auto states = detail::sector_bound_states(grid, in, bracket_scale(model), center);
    for (auto& bs : states) {
        bs.energy_abs = sol.e_gs + bs.energy;
        fill_localization(bs, model);
    }
    return states;
}

std::vector<BoundState> find_bound_states_2q_dense(const PolaronSolution2Q& sol,
                                                   const ModelParams& model) {
    const EffectiveHamiltonian2Q h(sol, model);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.dense());
    if (es.info() != Eigen::Success) throw SolverError("find_bound_states_2q_dense: eigensolver failed");
    const double edge = band_bottom(model);
    std::vector<BoundState> out;
    for (Eigen::Index c = 0; c < es.eigenvalues().size(); ++c) {
        const double e = es.eigenvalues()[c];
        if (!(e < edge)) break;
        Eigen::VectorXcd v = es.eigenvectors().col(c);
        const cplx ref = std::abs(v[0]) > 1e-8 ? v[0] : v[1];
        if (std::abs(ref) > 0) v *= std::conj(ref) / std::abs(ref);
        BoundState bs;
        bs.energy = e;
        bs.energy_abs = sol.e_gs + e;
        bs.lambda0 = v[0].real();
        bs.lambda1 = v[1].real();
        const double prod = (v[0] * std::conj(v[1])).real();
        bs.parity = std::abs(prod) < 1e-14 || prod > 0 ? Parity::symmetric : Parity::antisymmetric;
        bs.lambda_k.resize(static_cast<std::size_t>(v.size() - 2));
        for (Eigen::Index i = 2; i < v.size(); ++i) bs.lambda_k[static_cast<std::size_t>(i - 2)] = v[i];
        bs.center = h.center;
        bs.lambda_n = site_amplitudes(bs.lambda_k, bs.center);
        fill_localization(bs, model);
        out.push_back(std::move(bs));
    }
    return out;
}

std::vector<double> bound_photon_distribution_2q(const BoundState& bs, const PolaronSolution2Q& sol,
                                                 const ModelParams& model) {
    const auto p1 = displacement_profile_2q(sol, model, 0);
    const auto p2 = displacement_profile_2q(sol, model, 1);
    const double a = sol.alpha(), b = sol.beta();
    const double l0 = bs.lambda0, l1 = bs.lambda1;
    const double spin_xx = 2.0 * l0 * l1 + 2.0 * a * b * (1.0 - l0 * l0 - l1 * l1);
    std::vector<double> out(p1.size());
    for (std::size_t n = 0; n < p1.size(); ++n) {
        const double ln = bs.lambda_n[n].real();
        out[n] = p1[n] * p1[n] + p2[n] * p2[n] -
                 2.0 * ln * (p1[n] * (a * l0 + b * l1) + p2[n] * (a * l1 + b * l0)) +
                 2.0 * p1[n] * p2[n] * spin_xx + std::norm(bs.lambda_n[n]);
    }
    return out;
}

double variational_gs_is_eigenstate(const PolaronSolution1Q& sol, const ModelParams& model) {
    const MomentumGrid grid(model);
    const double c = coupling_k(model.couplings.at(0), model.n_sites);
    long double r = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const long double t = c - (grid.omega[i] + sol.delta_r) * static_cast<long double>(sol.f_k[i]);
        r += t * t;
    }
    return static_cast<double>(std::sqrt(r));
}

double variational_gs_is_eigenstate(const PolaronSolution2Q& sol, const ModelParams& model) {
    const MomentumGrid grid(model);
    const double c1 = coupling_k(model.couplings.at(0), model.n_sites);
    const double c2 = coupling_k(model.couplings.at(1), model.n_sites);
    const double cos2t = std::cos(2.0 * sol.theta), sin2t = std::sin(2.0 * sol.theta);
    long double r = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const long double w = grid.omega[i];
        const long double a1 = c1 - w * sol.f_k[i];
        const long double a2 = c2 - w * sol.f2_k[i];
        const long double cx = std::cos(grid.k[i] * sol.separation_x);
        const long double t1 = a1 - sol.delta_r1 * sol.f_k[i] * cos2t + sin2t * cx * a2;
        const long double t2 = a2 - sol.delta_r2 * sol.f2_k[i] * cos2t + sin2t * cx * a1;
        r += t1 * t1 + t2 * t2;
    }
    return static_cast<double>(std::sqrt(r));
}

}  // namespace wqed
