#pragma once

#include <cstddef>
#include <vector>

namespace wqed {

struct ModelParams {
    double delta = 0.3;
    double omega0 = 1.0;
    double lambda_hop = 0.2;
    std::vector<double> couplings{0.3};
    std::vector<int> positions{1000};
    int n_sites = 2000;

    std::size_t n_qubits() const { return couplings.size(); }

    // Throws ConfigError on any violated invariant.
    void validate() const;

    static ModelParams single(double delta, double g, double omega0 = 1.0,
                              double lambda_hop = 0.2, int n_sites = 2000);
    // Qubit 1 at N/2 - x/2 (rounded down), qubit 2 at qubit 1 + x.
    static ModelParams pair(double delta, double g, int x, double omega0 = 1.0,
                            double lambda_hop = 0.2, int n_sites = 2000);
    static ModelParams pair(double delta, double g1, double g2, int x, double omega0,
                            double lambda_hop, int n_sites);
};

struct MomentumGrid {
    std::vector<double> k;
    std::vector<double> omega;

    explicit MomentumGrid(const ModelParams& m);

    std::size_t size() const { return k.size(); }
    double omega_min() const;
    double omega_max() const;
    // Index of -k on the grid.
    std::size_t partner(std::size_t i) const;
};

double dispersion(double k, double omega0, double lambda_hop);
double coupling_k(double g, int n_sites);
double band_bottom(const ModelParams& m);
double band_top(const ModelParams& m);

// sin k(omega) for omega strictly inside the band.
double band_sin_k(double omega, double omega0, double lambda_hop);

// J(omega) = g^2 / (lambda sin k(omega)); binned 2 pi sum |c_k|^2 delta(omega - omega_k).
double spectral_density(double omega, double g, double omega0, double lambda_hop);
double spectral_density(double omega, const ModelParams& m, std::size_t qubit = 0);

}  // namespace wqed
