#include "wqed/ed_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "wqed/errors.hpp"

namespace wqed {

namespace {

void check_config(const ModelParams& model, const EdConfig& ed) {
    auto fail = [](const std::string& msg) { throw ConfigError("ed_oracle: " + msg); };
    if (model.n_sites < 1 || model.n_sites > 14) fail("n_sites must be in [1, 14]");
    if (ed.n_max < 2 || ed.n_max > 15) fail("n_max must be in [2, 15]");
    if (ed.total_cap() < 1) fail("n_total must be >= 1");
    if (model.couplings.empty() || model.couplings.size() > 2 || model.couplings.size() != model.positions.size())
        fail("one or two qubits with matching positions required");
    for (int p : model.positions)
        if (p < 0 || p >= model.n_sites) fail("qubit position outside the chain");
    if (model.positions.size() == 2 && model.positions[0] == model.positions[1]) fail("qubit positions must differ");
    if (!(model.lambda_hop >= 0) || !(model.delta > 0)) fail("delta must be > 0 and lambda >= 0");
}

void enumerate(int site, int n_sites, int n_max, int left, std::uint64_t code, int photons,
               std::vector<std::pair<std::uint64_t, int>>& out) {
    if (site == n_sites) {
        out.emplace_back(code, photons);
        return;
    }
    for (int n = 0; n <= std::min(n_max, left); ++n)
        enumerate(site + 1, n_sites, n_max, left - n, code | (static_cast<std::uint64_t>(n) << (4 * site)),
                  photons + n, out);
}

std::size_t count_configs(int n_sites, int n_max, int n_total) {
    std::vector<std::size_t> ways(static_cast<std::size_t>(n_total) + 1, 0);
    ways[0] = 1;
    for (int s = 0; s < n_sites; ++s) {
        std::vector<std::size_t> next(ways.size(), 0);
        for (std::size_t t = 0; t < ways.size(); ++t)
            for (int n = 0; n <= n_max && t + static_cast<std::size_t>(n) < ways.size(); ++n)
                next[t + static_cast<std::size_t>(n)] += ways[t];
        ways = std::move(next);
    }
    std::size_t total = 0;
    for (auto w : ways) total += w;
    return total;
}

double row_norm_bound(const SparseH& h) {
    double best = 0;
    for (Eigen::Index r = 0; r < h.outerSize(); ++r) {
        double s = 0;
        for (SparseH::InnerIterator it(h, r); it; ++it) s += std::abs(it.value());
        best = std::max(best, s);
    }
    return best;
}

struct Eigenpairs {
    std::vector<double> values;
    std::vector<Eigen::VectorXd> vectors;
};

Eigenpairs dense_lowest(const SparseH& h, int m) {
    const Eigen::MatrixXd d = Eigen::MatrixXd(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d);
    if (es.info() != Eigen::Success) throw SolverError("ed_oracle: dense eigensolver failed");
    Eigenpairs out;
    for (int i = 0; i < m && i < d.rows(); ++i) {
        out.values.push_back(es.eigenvalues()[i]);
        out.vectors.push_back(es.eigenvectors().col(i));
    }
    return out;
}

// Restarted Lanczos with full reorthogonalization; converged vectors are locked and projected out.
Eigenpairs lanczos_lowest(const SparseH& h, int m, const EdConfig& ed, double norm) {
    const Eigen::Index n = h.rows();
    Eigenpairs out;
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> normal;
    auto project = [&](Eigen::VectorXd& v) {
        for (const auto& u : out.vectors) v -= u.dot(v) * u;
    };
    const int kdim = static_cast<int>(std::min<Eigen::Index>(ed.krylov_dim, n));
    for (int target = 0; target < m && target < n; ++target) {
        Eigen::VectorXd start(n);
        for (Eigen::Index i = 0; i < n; ++i) start[i] = normal(rng);
        project(start);
        start.normalize();
        bool converged = false;
        double residual = 0;
        for (int restart = 0; restart < ed.max_restarts && !converged; ++restart) {
            Eigen::MatrixXd basis(n, kdim);
            std::vector<double> alpha, beta;
            basis.col(0) = start;
            int used = 0;
            for (int j = 0; j < kdim; ++j) {
                Eigen::VectorXd w = h * basis.col(j);
                for (int pass = 0; pass < 2; ++pass) {
                    project(w);
                    w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
                }
                alpha.push_back(basis.col(j).dot(h * basis.col(j)));
                used = j + 1;
                const double b = w.norm();
                if (j + 1 == kdim || b < 1e-14 * norm) break;
                beta.push_back(b);
                basis.col(j + 1) = w / b;
            }
            Eigen::MatrixXd t = Eigen::MatrixXd::Zero(used, used);
            for (int j = 0; j < used; ++j) {
                t(j, j) = alpha[static_cast<std::size_t>(j)];
                if (j + 1 < used) t(j, j + 1) = t(j + 1, j) = beta[static_cast<std::size_t>(j)];
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
            Eigen::VectorXd x = basis.leftCols(used) * es.eigenvectors().col(0);
            project(x);
            x.normalize();
            const double theta = x.dot(h * x);
            residual = (h * x - theta * x).norm();
            start = x;
            if (residual < ed.tolerance * norm) converged = true;
        }
        if (!converged) {
            std::ostringstream os;
            os << "ed_oracle: Lanczos did not converge for eigenpair " << target << " (residual " << residual << ")";
            throw SolverError(os.str());
        }
        out.values.push_back(start.dot(h * start));
        out.vectors.push_back(start);
    }
    std::vector<std::size_t> order(out.values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return out.values[a] < out.values[b]; });
    Eigenpairs sorted;
    for (auto i : order) {
        sorted.values.push_back(out.values[i]);
        sorted.vectors.push_back(out.vectors[i]);
    }
    return sorted;
}

}  // namespace

std::size_t EdBasis::index(std::uint64_t code) const {
    auto it = std::lower_bound(states.begin(), states.end(), code);
    if (it == states.end() || *it != code) return states.size();
    return static_cast<std::size_t>(it - states.begin());
}

int ground_parity(const ModelParams& model) { return model.n_qubits() % 2 == 0 ? 1 : -1; }

EdBasis build_basis(const ModelParams& model, const EdConfig& ed, int parity) {
    check_config(model, ed);
    const int nq = static_cast<int>(model.n_qubits());
    const std::size_t photon_states = count_configs(model.n_sites, ed.n_max, ed.total_cap());
    const std::size_t full = photon_states << nq;
    if (full > ed.max_states) {
        std::ostringstream os;
        os << "ed_oracle: Hilbert dimension " << full << " exceeds the cap " << ed.max_states;
        throw ConfigError(os.str());
    }
    std::vector<std::pair<std::uint64_t, int>> configs;
    configs.reserve(photon_states);
    enumerate(0, model.n_sites, ed.n_max, ed.total_cap(), 0, 0, configs);
    EdBasis b;
    b.n_sites = model.n_sites;
    b.n_qubits = nq;
    b.parity = parity;
    for (unsigned q = 0; q < (1U << nq); ++q) {
        int spin = 1;
        for (int j = 0; j < nq; ++j) spin *= (q >> j) & 1U ? 1 : -1;
        for (const auto& [code, photons] : configs) {
            const int p = spin * (photons % 2 == 0 ? 1 : -1);
            if (parity != 0 && p != parity) continue;
            b.states.push_back(code | (static_cast<std::uint64_t>(q) << 56));
        }
    }
    std::sort(b.states.begin(), b.states.end());
    return b;
}

SparseH build_hamiltonian(const ModelParams& model, const EdBasis& basis) {
    const int n_sites = basis.n_sites;
    const int nq = basis.n_qubits;
    int n_max = 0, n_total = 0;
    for (auto code : basis.states) {
        int tot = 0;
        for (int s = 0; s < n_sites; ++s) {
            n_max = std::max(n_max, EdBasis::occupation(code, s));
            tot += EdBasis::occupation(code, s);
        }
        n_total = std::max(n_total, tot);
    }
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(basis.size() * static_cast<std::size_t>(2 * n_sites + 2 * nq + 1));
    auto add = [&](std::size_t row, std::uint64_t target, double amp) {
        const std::size_t col = basis.index(target);
        if (col < basis.size())
            trip.emplace_back(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col), amp);
    };
    for (std::size_t r = 0; r < basis.size(); ++r) {
        const std::uint64_t code = basis.states[r];
        int tot = 0;
        for (int s = 0; s < n_sites; ++s) tot += EdBasis::occupation(code, s);
        double diag = model.omega0 * tot;
        for (int j = 0; j < nq; ++j) diag += 0.5 * model.delta * (EdBasis::qubit_up(code, j) ? 1.0 : -1.0);
        trip.emplace_back(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r), diag);
        for (int s = 0; s + 1 < n_sites; ++s) {
            const int a = EdBasis::occupation(code, s), b = EdBasis::occupation(code, s + 1);
            const std::uint64_t one_s = std::uint64_t{1} << (4 * s), one_t = std::uint64_t{1} << (4 * (s + 1));
            if (b > 0 && a < n_max) add(r, code + one_s - one_t, -model.lambda_hop * std::sqrt((a + 1.0) * b));
            if (a > 0 && b < n_max) add(r, code - one_s + one_t, -model.lambda_hop * std::sqrt((b + 1.0) * a));
        }
        for (int j = 0; j < nq; ++j) {
            const double g = model.couplings[static_cast<std::size_t>(j)];
            if (g == 0) continue;
            const int site = model.positions[static_cast<std::size_t>(j)];
            const int occ = EdBasis::occupation(code, site);
            const std::uint64_t flipped = code ^ (std::uint64_t{1} << (56 + j));
            const std::uint64_t one = std::uint64_t{1} << (4 * site);
            if (occ > 0) add(r, flipped - one, g * std::sqrt(static_cast<double>(occ)));
            if (occ < n_max && tot < n_total) add(r, flipped + one, g * std::sqrt(occ + 1.0));
        }
    }
    SparseH h(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(basis.size()));
    h.setFromTriplets(trip.begin(), trip.end());
    h.makeCompressed();
    return h;
}

SparseH build_hamiltonian(const ModelParams& model, const EdConfig& ed) {
    return build_hamiltonian(model, build_basis(model, ed, 0));
}

EdResult lowest_states_in_sector(const ModelParams& model, const EdConfig& ed, int parity, int m) {
    const EdBasis basis = build_basis(model, ed, parity);
    EdResult res;
    res.n_max = ed.n_max;
    res.n_total = ed.total_cap();
    res.dimension = basis.size();
    if (basis.size() == 0 || m <= 0) return res;
    const SparseH h = build_hamiltonian(model, basis);
    const double norm = row_norm_bound(h);
    res.norm_bound = norm;
    const bool dense = ed.solver == EdSolver::dense ||
                       (ed.solver == EdSolver::automatic && basis.size() <= ed.dense_limit);
    const Eigenpairs pairs = dense ? dense_lowest(h, m) : lanczos_lowest(h, m, ed, norm);
    for (std::size_t i = 0; i < pairs.values.size(); ++i) {
        EdState st;
        st.energy = pairs.values[i];
        st.parity = parity;
        st.vector = pairs.vectors[i];
        st.residual = (h * st.vector - st.energy * st.vector).norm();
        st.photon_profile.assign(static_cast<std::size_t>(basis.n_sites), 0.0);
        st.sigma_z.assign(static_cast<std::size_t>(basis.n_qubits), 0.0);
        for (std::size_t r = 0; r < basis.size(); ++r) {
            const double p = st.vector[static_cast<Eigen::Index>(r)] * st.vector[static_cast<Eigen::Index>(r)];
            if (p == 0) continue;
            const std::uint64_t code = basis.states[r];
            for (int s = 0; s < basis.n_sites; ++s) st.photon_profile[static_cast<std::size_t>(s)] += p * EdBasis::occupation(code, s);
            for (int j = 0; j < basis.n_qubits; ++j)
                st.sigma_z[static_cast<std::size_t>(j)] += p * (EdBasis::qubit_up(code, j) ? 1.0 : -1.0);
        }
        res.states.push_back(std::move(st));
    }
    return res;
}

EdResult lowest_states(const ModelParams& model, const EdConfig& ed, int m) {
    EdResult res;
    for (int parity : {1, -1}) {
        EdResult part = lowest_states_in_sector(model, ed, parity, m);
        res.n_max = part.n_max;
        res.n_total = part.n_total;
        res.dimension += part.dimension;
        res.norm_bound = std::max(res.norm_bound, part.norm_bound);
        for (auto& s : part.states) res.states.push_back(std::move(s));
    }
    std::stable_sort(res.states.begin(), res.states.end(),
                     [](const EdState& a, const EdState& b) { return a.energy < b.energy; });
    if (res.states.size() > static_cast<std::size_t>(m)) res.states.resize(static_cast<std::size_t>(m));
    return res;
}

TruncatedEdResult lowest_states_converged(const ModelParams& model, EdConfig ed, int m, double rel_tol,
                                          int max_bumps) {
    const int offset = ed.total_cap() - ed.n_max;
    TruncatedEdResult out;
    out.result = lowest_states(model, ed, m);
    for (int bump = 1; bump <= max_bumps; ++bump) {
        EdConfig next = ed;
        next.n_max = ed.n_max + 1;
        next.n_total = next.n_max + offset;
        EdResult r = lowest_states(model, next, m);
        const double e0 = out.result.states.front().energy, e1 = r.states.front().energy;
        out.relative_change = std::abs(e1 - e0) / std::max(std::abs(e1), 1e-300);
        out.bumps = bump;
        out.result = std::move(r);
        ed = next;
        if (out.relative_change < rel_tol) return out;
    }
    std::ostringstream os;
    os << "ed_oracle: truncation not converged after " << max_bumps << " increases (relative change "
       << out.relative_change << ")";
    throw ConvergenceError(os.str(), out.relative_change);
}

}  // namespace wqed
