#include "wqed/numerics.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "wqed/errors.hpp"

namespace wqed {

namespace {

// exp(2 pi i j / M) for j in [0, M), long double.
std::vector<std::complex<long double>> root_table(std::size_t m) {
    std::vector<std::complex<long double>> t(m);
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    for (std::size_t j = 0; j < m; ++j) {
        long double a = two_pi * static_cast<long double>(j) / static_cast<long double>(m);
        t[j] = {std::cos(a), std::sin(a)};
    }
    return t;
}

}  // namespace

std::vector<cplx> site_amplitudes(const std::vector<cplx>& a_k, double center) {
    const std::size_t n = a_k.size();
    const long double twice = 2.0L * center;
    const long long c2 = std::llround(twice);
    if (std::abs(twice - static_cast<long double>(c2)) > 1e-9L)
        throw ConfigError("site_amplitudes: center must be an integer or half-integer");
    // k_m (n - c) = -pi (n - c) + 2 pi m (n - c) / N. With d2 = 2(n - c) an integer,
    // exp(i k_m (n - c)) = exp(-i pi d2 / 2) * exp(2 pi i m d2 / (2N)).
    const std::size_t M = 2 * n;
    const auto table = root_table(M);
    const auto quarter = root_table(4);
    std::vector<cplx> out(n);
    const long double norm = 1.0L / std::sqrt(static_cast<long double>(n));
    for (std::size_t site = 0; site < n; ++site) {
        long long d2 = 2 * static_cast<long long>(site) - c2;
        long long dm = ((d2 % static_cast<long long>(M)) + static_cast<long long>(M)) %
                       static_cast<long long>(M);
        std::complex<long double> acc = 0;
        std::size_t idx = 0;
        for (std::size_t m = 0; m < n; ++m) {
            acc += table[idx] * std::complex<long double>(a_k[m].real(), a_k[m].imag());
            idx += static_cast<std::size_t>(dm);
            if (idx >= M) idx -= M;
        }
        long long q = ((-d2) % 4 + 4) % 4;
        acc *= quarter[static_cast<std::size_t>(q)] * norm;
        out[site] = cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    }
    return out;
}

std::vector<double> site_amplitudes_real(const std::vector<double>& a_k, double center) {
    std::vector<cplx> c(a_k.begin(), a_k.end());
    auto s = site_amplitudes(c, center);
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i].real();
    return out;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw SolverError("fit_line: need at least two points");
    long double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    long double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) throw SolverError("fit_line: degenerate abscissa");
    LineFit f;
    f.slope = static_cast<double>(sxy / sxx);
    f.intercept = static_cast<double>(my - sxy / sxx * mx);
    f.points = n;
    return f;
}

TailFit fit_tail_rate(const std::vector<double>& profile, std::size_t center, double lo_rel,
                      double hi_rel) {
    double peak = 0;
    for (double v : profile) peak = std::max(peak, std::abs(v));
    if (peak == 0) throw SolverError("fit_tail_rate: zero profile");
    std::vector<double> xs, ys;
    TailFit out;
    bool started = false;
    for (std::size_t n = center + 1; n < profile.size(); ++n) {
        double r = std::abs(profile[n]) / peak;
        if (!started) {
            if (r < hi_rel) {
                started = true;
                out.first = n;
            } else {
                continue;
            }
        }
        if (r <= lo_rel) break;
        xs.push_back(static_cast<double>(n - center));
        ys.push_back(std::log(std::abs(profile[n])));
        out.last = n;
    }
    if (xs.size() < 3) throw SolverError("fit_tail_rate: fewer than three points in the fit window");
    auto f = fit_line(xs, ys);
    out.rate = -f.slope;
    out.points = xs.size();
    return out;
}

unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("WQED_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(std::min<long>(v, hw));
    }
    return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex mu;
    auto body = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

double relative_l2(const std::vector<double>& a, const std::vector<double>& reference) {
    long double num = 0, den = 0;
    for (std::size_t i = 0; i < a.size() && i < reference.size(); ++i) {
        const long double d = static_cast<long double>(a[i]) - reference[i];
        num += d * d;
        den += static_cast<long double>(reference[i]) * reference[i];
    }
    return den > 0 ? static_cast<double>(std::sqrt(num / den)) : static_cast<double>(std::sqrt(num));
}

}  // namespace wqed
