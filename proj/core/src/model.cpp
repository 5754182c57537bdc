#include "wqed/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "wqed/errors.hpp"

namespace wqed {

void ModelParams::validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError("model: " + msg); };
    if (!(lambda_hop > 0)) fail("lambda must be > 0");
    if (!(omega0 - 2 * lambda_hop > 0)) fail("omega0 - 2 lambda must be > 0 (band strictly positive)");
    if (n_sites < 2 || n_sites % 2 != 0) fail("n_sites must be even and >= 2");
    if (!(delta > 0)) fail("delta must be > 0");
    if (couplings.size() != positions.size()) fail("couplings and positions differ in length");
    if (couplings.empty() || couplings.size() > 2) fail("one or two qubits supported");
    for (double g : couplings)
        if (!(g >= 0) || !std::isfinite(g)) fail("couplings must be finite and >= 0");
    std::set<int> seen;
    for (int p : positions) {
        if (p < 0 || p >= n_sites) fail("qubit position outside [0, n_sites)");
        if (!seen.insert(p).second) fail("qubit positions must be distinct");
    }
    if (!std::isfinite(delta) || !std::isfinite(omega0) || !std::isfinite(lambda_hop))
        fail("non-finite parameter");
}

ModelParams ModelParams::single(double delta, double g, double omega0, double lambda_hop,
                                int n_sites) {
    ModelParams m;
    m.delta = delta;
    m.omega0 = omega0;
    m.lambda_hop = lambda_hop;
    m.couplings = {g};
    m.positions = {n_sites / 2};
    m.n_sites = n_sites;
    return m;
}

ModelParams ModelParams::pair(double delta, double g, int x, double omega0, double lambda_hop,
                              int n_sites) {
    return pair(delta, g, g, x, omega0, lambda_hop, n_sites);
}

ModelParams ModelParams::pair(double delta, double g1, double g2, int x, double omega0,
                              double lambda_hop, int n_sites) {
    ModelParams m;
    m.delta = delta;
    m.omega0 = omega0;
    m.lambda_hop = lambda_hop;
    m.couplings = {g1, g2};
    int x1 = n_sites / 2 - x / 2;
    m.positions = {x1, x1 + x};
    m.n_sites = n_sites;
    return m;
}

MomentumGrid::MomentumGrid(const ModelParams& m) {
    const int n = m.n_sites;
    k.resize(n);
    omega.resize(n);
    for (int i = 0; i < n; ++i) {
        k[i] = -std::numbers::pi + 2.0 * std::numbers::pi * i / n;
        omega[i] = dispersion(k[i], m.omega0, m.lambda_hop);
    }
}

double MomentumGrid::omega_min() const { return *std::min_element(omega.begin(), omega.end()); }
double MomentumGrid::omega_max() const { return *std::max_element(omega.begin(), omega.end()); }

std::size_t MomentumGrid::partner(std::size_t i) const {
    // k_i = -pi + 2 pi i / N, so -k_i corresponds to index (N - i) mod N.
    const std::size_t n = k.size();
    return (n - i) % n;
}

double dispersion(double k, double omega0, double lambda_hop) {
    return omega0 - 2.0 * lambda_hop * std::cos(k);
}

double coupling_k(double g, int n_sites) { return g / std::sqrt(static_cast<double>(n_sites)); }

double band_bottom(const ModelParams& m) { return m.omega0 - 2.0 * m.lambda_hop; }
double band_top(const ModelParams& m) { return m.omega0 + 2.0 * m.lambda_hop; }

double band_sin_k(double omega, double omega0, double lambda_hop) {
    const double c = (omega0 - omega) / (2.0 * lambda_hop);
    if (!(std::abs(c) < 1.0)) {
        std::ostringstream os;
        os << "frequency " << omega << " is not strictly inside the band";
        throw DomainError(os.str());
    }
    return std::sqrt(1.0 - c * c);
}

double spectral_density(double omega, double g, double omega0, double lambda_hop) {
    return g * g / (lambda_hop * band_sin_k(omega, omega0, lambda_hop));
}

double spectral_density(double omega, const ModelParams& m, std::size_t qubit) {
    return spectral_density(omega, m.couplings.at(qubit), m.omega0, m.lambda_hop);
}

}  // namespace wqed
