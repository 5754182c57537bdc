#include "wqed/state_transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "wqed/errors.hpp"

namespace wqed {

std::pair<double, double> TightBinding::eigenvalues() const {
    const double a = std::abs(tau);
    return {epsilon - a, epsilon + a};
}

TightBinding extract_tight_binding(const BoundState& symmetric, const BoundState& antisymmetric) {
    TightBinding tb;
    tb.e_s = symmetric.energy;
    tb.e_a = antisymmetric.energy;
    tb.epsilon = 0.5 * (tb.e_s + tb.e_a);
    tb.tau = 0.5 * (tb.e_a - tb.e_s);
    return tb;
}

TightBinding extract_tight_binding(const std::vector<BoundState>& states) {
    const BoundState* s = nullptr;
    const BoundState* a = nullptr;
    for (const auto& b : states) {
        if (b.parity == Parity::symmetric && !s) s = &b;
        if (b.parity == Parity::antisymmetric && !a) a = &b;
    }
    if (!s || !a) throw SolverError("state_transfer: no effective two-level model at this distance");
    return extract_tight_binding(*s, *a);
}

std::string to_string(RampShape s) {
    switch (s) {
        case RampShape::smoothstep: return "smoothstep";
        case RampShape::instantaneous: return "instantaneous";
        default: return "linear";
    }
}

RampShape ramp_shape_from_string(const std::string& s) {
    if (s == "linear") return RampShape::linear;
    if (s == "smoothstep") return RampShape::smoothstep;
    if (s == "instantaneous") return RampShape::instantaneous;
    throw ConfigError("protocol: unknown ramp shape '" + s + "'");
}

namespace {

double ramp(double a, double b, double s, RampShape shape, double duration) {
    if (shape == RampShape::instantaneous || duration <= 0) return b;
    s = std::clamp(s, 0.0, 1.0);
    if (shape == RampShape::smoothstep) s = s * s * (3.0 - 2.0 * s);
    return a + (b - a) * s;
}

double max_rate(double a, double b, RampShape shape, double duration) {
    if (a == b) return 0;
    if (shape == RampShape::instantaneous || duration <= 0) return std::numeric_limits<double>::infinity();
    const double peak = shape == RampShape::smoothstep ? 1.5 : 1.0;
    return peak * std::abs(b - a) / duration;
}

}  // namespace

double ProtocolSchedule::total_time() const {
    double t = 0;
    for (const auto& s : segments) t += s.duration;
    return t;
}

std::pair<double, double> ProtocolSchedule::couplings_at(double t) const {
    double g1 = g1_start, g2 = g2_start, t0 = 0;
    for (const auto& s : segments) {
        if (s.duration <= 0) {
            if (t >= t0) {
                g1 = s.g1_end;
                g2 = s.g2_end;
            }
            continue;
        }
        if (t < t0 + s.duration) {
            const double x = (t - t0) / s.duration;
            if (t < t0) return {g1, g2};
            return {ramp(g1, s.g1_end, x, s.shape1, s.duration), ramp(g2, s.g2_end, x, s.shape2, s.duration)};
        }
        g1 = s.g1_end;
        g2 = s.g2_end;
        t0 += s.duration;
    }
    return {g1, g2};
}

void ProtocolSchedule::validate() const {
    auto fail = [](const std::string& m) { throw ConfigError("protocol: " + m); };
    if (!(g1_start >= 0) || !(g2_start >= 0)) fail("couplings must be >= 0");
    if (segments.empty()) fail("schedule has no segments");
    for (const auto& s : segments) {
        if (!(s.duration >= 0) || !std::isfinite(s.duration)) fail("segment '" + s.name + "' has invalid duration");
        if (!(s.g1_end >= 0) || !(s.g2_end >= 0)) fail("segment '" + s.name + "' has negative coupling");
    }
}

ProtocolSchedule ProtocolSchedule::standard(double g, double ramp_time, double hold_time) {
    ProtocolSchedule p;
    p.segments = {
        {"load", ramp_time, RampShape::smoothstep, RampShape::linear, g, 0.0},
        {"couple", 0.0, RampShape::instantaneous, RampShape::instantaneous, g, g},
        {"hold", hold_time, RampShape::linear, RampShape::linear, g, g},
        {"decouple", 0.0, RampShape::instantaneous, RampShape::instantaneous, 0.0, g},
        {"unload", ramp_time, RampShape::linear, RampShape::smoothstep, 0.0, 0.0},
    };
    return p;
}

namespace {

ModelParams with_couplings(const ModelParams& base, double g1, double g2) {
    ModelParams m = base;
    m.couplings = {g1, g2};
    return m;
}

// psi <- exp(-i H h) psi by a Lanczos projection.
void krylov_step(const EffectiveHamiltonian2Q& h, Eigen::VectorXcd& psi, double dt, const TransferOptions& opt) {
    const double beta0 = psi.norm();
    if (beta0 == 0) return;
    const Eigen::Index n = psi.size();
    const int mmax = std::min<int>(opt.krylov_max, static_cast<int>(n));
    Eigen::MatrixXcd v(n, mmax);
    std::vector<double> alpha, beta;
    v.col(0) = psi / beta0;
    Eigen::VectorXcd w(n);
    Eigen::VectorXcd coef;
    for (int j = 0; j < mmax; ++j) {
        h.apply(v.col(j), w);
        const double a = v.col(j).dot(w).real();
        alpha.push_back(a);
        w -= v.leftCols(j + 1) * (v.leftCols(j + 1).adjoint() * w);
        const double b = w.norm();
        const int m = j + 1;
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            t(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        Eigen::VectorXcd phase(m);
        for (int i = 0; i < m; ++i) phase[i] = std::polar(1.0, -es.eigenvalues()[i] * dt) * es.eigenvectors()(0, i);
        coef = es.eigenvectors().cast<cplx>() * phase;
        if (b * std::abs(coef[m - 1]) < opt.krylov_tolerance || b < 1e-14 || m == mmax) {
            if (m == mmax && b * std::abs(coef[m - 1]) > 1e-8)
                throw SolverError("state_transfer: Krylov propagator did not converge; reduce dt");
            psi = beta0 * (v.leftCols(m) * coef);
            return;
        }
        beta.push_back(b);
        v.col(j + 1) = w / b;
    }
}

struct Frame {
    double g1 = -1, g2 = -1;
    PolaronSolution2Q sol;
    bool valid = false;
};

void update_frame(Frame& f, const ModelParams& base, double g1, double g2, long& solves) {
    if (f.valid && f.g1 == g1 && f.g2 == g2) return;
    const ModelParams m = with_couplings(base, g1, g2);
    try {
        f.sol = f.valid ? solve_2q_from(m, f.sol) : solve_2q(m);
    } catch (const ConvergenceError& e) {
        std::ostringstream os;
        os << "state_transfer: step rejected, frame did not converge at g1=" << g1 << " g2=" << g2 << ": " << e.what();
        throw ConvergenceError(os.str(), e.residual());
    }
    f.g1 = g1;
    f.g2 = g2;
    f.valid = true;
    ++solves;
}

}  // namespace

TransferTrace simulate_protocol(const ModelParams& model, const ProtocolSchedule& schedule, const TransferOptions& opt) {
    schedule.validate();
    if (model.n_qubits() != 2) throw ConfigError("state_transfer: two qubits required");
    if (!(opt.dt > 0)) throw ConfigError("state_transfer: dt must be > 0");
    TransferTrace tr;
    const Eigen::Index dim = model.n_sites + 2;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi[0] = 1.0;
    Frame frame;
    double g1 = schedule.g1_start, g2 = schedule.g2_start, t = 0;
    auto sample = [&](double time, double a, double b) {
        tr.times.push_back(time);
        tr.g1.push_back(a);
        tr.g2.push_back(b);
        tr.population_left.push_back(std::norm(psi[0]));
        tr.population_right.push_back(std::norm(psi[1]));
        tr.norm_drift = std::max(tr.norm_drift, std::abs(psi.squaredNorm() - 1.0));
    };
    sample(0, g1, g2);
    for (const auto& seg : schedule.segments) {
        if (seg.duration <= 0) {
            g1 = seg.g1_end;
            g2 = seg.g2_end;
            continue;
        }
        const long steps = std::max<long>(1, static_cast<long>(std::ceil(seg.duration / opt.dt - 1e-9)));
        const double h = seg.duration / static_cast<double>(steps);
        for (long i = 0; i < steps; ++i) {
            const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(steps);
            const double a = ramp(g1, seg.g1_end, x, seg.shape1, seg.duration);
            const double b = ramp(g2, seg.g2_end, x, seg.shape2, seg.duration);
            update_frame(frame, model, a, b, tr.frame_solves);
            const EffectiveHamiltonian2Q heff(frame.sol, with_couplings(model, a, b));
            krylov_step(heff, psi, h, opt);
            ++tr.steps;
            if (tr.steps % opt.sample_every == 0 || i + 1 == steps)
                sample(t + static_cast<double>(i + 1) * h, a, b);
        }
        t += seg.duration;
        g1 = seg.g1_end;
        g2 = seg.g2_end;
    }
    tr.fidelity = std::norm(psi[1]);
    return tr;
}

TransferTrace simulate_tight_binding(const TightBinding& tb, const ProtocolSchedule& schedule, double dt) {
    schedule.validate();
    TransferTrace tr;
    cplx cl = 1.0, cr = 0.0;
    double g1 = schedule.g1_start, g2 = schedule.g2_start, t = 0;
    auto sample = [&](double time, double a, double b) {
        tr.times.push_back(time);
        tr.g1.push_back(a);
        tr.g2.push_back(b);
        tr.population_left.push_back(std::norm(cl));
        tr.population_right.push_back(std::norm(cr));
        tr.norm_drift = std::max(tr.norm_drift, std::abs(std::norm(cl) + std::norm(cr) - 1.0));
    };
    sample(0, g1, g2);
    for (const auto& seg : schedule.segments) {
        if (seg.duration <= 0) {
            g1 = seg.g1_end;
            g2 = seg.g2_end;
            continue;
        }
        const long steps = std::max<long>(1, static_cast<long>(std::ceil(seg.duration / dt - 1e-9)));
        const double h = seg.duration / static_cast<double>(steps);
        for (long i = 0; i < steps; ++i) {
            const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(steps);
            const double a = ramp(g1, seg.g1_end, x, seg.shape1, seg.duration);
            const double b = ramp(g2, seg.g2_end, x, seg.shape2, seg.duration);
            const double hop = a > 0 && b > 0 ? tb.tau : 0.0;
            const cplx ph = std::polar(1.0, -tb.epsilon * h);
            const double c = std::cos(hop * h), s = std::sin(hop * h);
            const cplx nl = ph * (c * cl - cplx(0, s) * cr);
            const cplx nr = ph * (c * cr - cplx(0, s) * cl);
            cl = nl;
            cr = nr;
            ++tr.steps;
        }
        t += seg.duration;
        g1 = seg.g1_end;
        g2 = seg.g2_end;
        sample(t, g1, g2);
    }
    tr.fidelity = std::norm(cr);
    return tr;
}

namespace {

double lowest_excitation_gap(const ModelParams& base, double g1, double g2) {
    const double edge = band_bottom(base);
    if (g1 == 0 && g2 == 0) return edge - base.delta;
    const ModelParams m = with_couplings(base, g1, g2);
    const auto sol = solve_2q(m);
    const auto states = find_bound_states_2q(sol, m);
    if (states.empty()) return 0;
    return edge - states.front().energy;
}

}  // namespace

std::vector<SegmentAdiabaticity> adiabaticity_check(const ProtocolSchedule& schedule, const ModelParams& model,
                                                    double threshold, int samples) {
    schedule.validate();
    std::vector<SegmentAdiabaticity> out;
    double g1 = schedule.g1_start, g2 = schedule.g2_start;
    for (const auto& seg : schedule.segments) {
        SegmentAdiabaticity r;
        r.name = seg.name;
        r.max_rate = std::max(max_rate(g1, seg.g1_end, seg.shape1, seg.duration),
                              max_rate(g2, seg.g2_end, seg.shape2, seg.duration));
        r.diabatic = std::isinf(r.max_rate);
        double gap = std::numeric_limits<double>::infinity();
        const int n = seg.duration > 0 ? std::max(2, samples) : 1;
        for (int i = 0; i < n; ++i) {
            const double x = n == 1 ? 1.0 : static_cast<double>(i) / (n - 1);
            const double a = ramp(g1, seg.g1_end, x, seg.shape1, seg.duration);
            const double b = ramp(g2, seg.g2_end, x, seg.shape2, seg.duration);
            gap = std::min(gap, lowest_excitation_gap(model, a, b));
        }
        r.min_gap = gap;
        if (r.diabatic)
            r.ratio = std::numeric_limits<double>::infinity();
        else
            r.ratio = r.max_rate == 0 ? 0.0 : (gap > 0 ? r.max_rate / (gap * gap) : std::numeric_limits<double>::infinity());
        r.violates = !r.diabatic && r.ratio > threshold;
        out.push_back(r);
        g1 = seg.g1_end;
        g2 = seg.g2_end;
    }
    return out;
}

namespace {

Eigen::VectorXcd as_vector(const BoundState& b) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(b.lambda_k.size() + 2));
    v[0] = b.lambda0;
    v[1] = b.lambda1;
    for (std::size_t i = 0; i < b.lambda_k.size(); ++i) v[static_cast<Eigen::Index>(i + 2)] = b.lambda_k[i];
    return v;
}

}  // namespace

EqualCouplingDynamics equal_coupling_dynamics(const ModelParams& model, double g) {
    if (model.n_qubits() != 2) throw ConfigError("state_transfer: two qubits required");
    const ModelParams left_model = with_couplings(model, g, 0.0);
    const auto left_sol = solve_2q(left_model);
    const EffectiveHamiltonian2Q hl(left_sol, left_model);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> el(hl.dense());
    Eigen::VectorXcd psi0 = el.eigenvectors().col(0);
    {
        // lowest state localized on qubit 1
        Eigen::Index best = 0;
        for (Eigen::Index c = 0; c < 2 && c < psi0.size(); ++c)
            if (std::norm(el.eigenvectors()(0, c)) > std::norm(el.eigenvectors()(0, best))) best = c;
        psi0 = el.eigenvectors().col(best);
    }

    const ModelParams eq_model = with_couplings(model, g, g);
    const auto sol = solve_2q(eq_model);
    const auto states = find_bound_states_2q(sol, eq_model);
    const TightBinding tb = extract_tight_binding(states);
    Eigen::VectorXcd vs, va;
    for (const auto& b : states) {
        if (b.parity == Parity::symmetric && vs.size() == 0) vs = as_vector(b);
        if (b.parity == Parity::antisymmetric && va.size() == 0) va = as_vector(b);
    }
    const Eigen::VectorXcd right = (vs - va) / std::numbers::sqrt2;

    const EffectiveHamiltonian2Q h(sol, eq_model);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.dense());
    if (es.info() != Eigen::Success) throw SolverError("state_transfer: eigensolver failed");
    const Eigen::VectorXcd a = es.eigenvectors().adjoint() * psi0;
    const Eigen::VectorXcd r = es.eigenvectors().adjoint() * right;
    const Eigen::VectorXd e = es.eigenvalues();
    auto pop = [&](double t) {
        cplx s = 0;
        for (Eigen::Index i = 0; i < e.size(); ++i) s += std::conj(r[i]) * a[i] * std::polar(1.0, -e[i] * t);
        return std::norm(s);
    };
    const double guess = std::numbers::pi / (2.0 * std::abs(tb.tau));
    const int grid = 4000;
    const double span = 2.0 * guess;
    double prev = pop(0), cur = pop(span / grid);
    double t_star = guess;
    for (int i = 2; i <= grid; ++i) {
        const double next = pop(span * i / grid);
        if (cur >= prev && cur > next && cur > 0.25) {
            double lo = span * (i - 2) / grid, hi = span * i / grid;
            const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
            double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
            double f1 = pop(x1), f2 = pop(x2);
            for (int it = 0; it < 200 && hi - lo > 1e-9 * hi; ++it) {
                if (f1 > f2) {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - gr * (hi - lo);
                    f1 = pop(x1);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + gr * (hi - lo);
                    f2 = pop(x2);
                }
            }
            t_star = 0.5 * (lo + hi);
            break;
        }
        prev = cur;
        cur = next;
    }
    EqualCouplingDynamics d;
    d.first_max_time = t_star;
    d.first_max_population = pop(t_star);
    d.rabi_period = 2.0 * t_star;
    return d;
}

}  // namespace wqed
