#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace wqed {

using cplx = std::complex<double>;

// a_n = N^{-1/2} sum_k exp(i k (n - center)) a_k on the grid k_m = -pi + 2 pi m / N.
// center may be an integer or half-integer; sums are accumulated in long double.
std::vector<cplx> site_amplitudes(const std::vector<cplx>& a_k, double center);
std::vector<double> site_amplitudes_real(const std::vector<double>& a_k, double center);

struct LineFit {
    double slope = 0;
    double intercept = 0;
    std::size_t points = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Fits ln|a_n| against distance d = n - center for d > 0, using only points with
// lo_rel < |a_n| / peak < hi_rel. Returns the decay rate (minus the slope).
struct TailFit {
    double rate = 0;
    std::size_t first = 0;
    std::size_t last = 0;
    std::size_t points = 0;
};
TailFit fit_tail_rate(const std::vector<double>& profile, std::size_t center,
                      double lo_rel = 1e-13, double hi_rel = 1e-5);

// Runs fn(i) for i in [0, n) on up to worker_count() threads; i is claimed dynamically.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);
unsigned worker_count();

std::uint64_t fnv1a(const std::string& s);

// ||a - reference|| / ||reference||.
double relative_l2(const std::vector<double>& a, const std::vector<double>& reference);

}  // namespace wqed
