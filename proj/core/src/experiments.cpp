#include "wqed/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>

#include "wqed/config.hpp"
#include "wqed/dynamics.hpp"
#include "wqed/ed_oracle.hpp"
#include "wqed/errors.hpp"
#include "wqed/excitation_subspace.hpp"
#include "wqed/numerics.hpp"
#include "wqed/polaron_single.hpp"
#include "wqed/polaron_two.hpp"
#include "wqed/rwa_baseline.hpp"
#include "wqed/state_transfer.hpp"

namespace wqed {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Point {
    double delta = 0, g = 0;
    int x = 0;
};

// Canonical order: delta, then g, then x, each ascending.
std::vector<Point> sweep_points(const json& sweep, bool with_x) {
    std::vector<Point> pts;
    const auto deltas = axis(sweep.at("delta"), "delta");
    const auto gs = axis(sweep.at("g"), "g");
    const std::vector<int> xs = with_x ? int_axis(sweep.at("x"), "x") : std::vector<int>{0};
    for (double d : deltas)
        for (double g : gs)
            for (int x : xs) pts.push_back({d, g, x});
    return pts;
}

std::string status_of(const std::exception_ptr& e) {
    if (!e) return "ok";
    try {
        std::rethrow_exception(e);
    } catch (const ConvergenceError&) {
        return "convergence_error";
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        return "solver_error";
    }
    return "solver_error";
}

template <class Row, class Fn>
std::vector<Row> map_points(const std::vector<Point>& pts, Fn fn, std::vector<std::exception_ptr>& errors) {
    std::vector<Row> rows(pts.size());
    errors.assign(pts.size(), nullptr);
    parallel_for(pts.size(), [&](std::size_t i) {
        try {
            rows[i] = fn(pts[i]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    return rows;
}

std::string describe(const Point& p, bool with_x) {
    char buf[96];
    if (with_x)
        std::snprintf(buf, sizeof buf, "delta=%.6g g=%.6g x=%d", p.delta, p.g, p.x);
    else
        std::snprintf(buf, sizeof buf, "delta=%.6g g=%.6g", p.delta, p.g);
    return buf;
}

std::string what_of(const std::exception_ptr& e) {
    try {
        std::rethrow_exception(e);
    } catch (const std::exception& ex) {
        return ex.what();
    }
}

int flag(RunOutcome& out, const std::string& module, const std::string& point, const std::string& what) {
    out.messages.push_back(module + " at " + point + ": " + what);
    return 1;
}

int count_flagged(RunOutcome& out, const std::string& module, const std::vector<Point>& pts,
                  const std::vector<std::exception_ptr>& errors, bool with_x) {
    int n = 0;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!errors[i]) continue;
        status_of(errors[i]);
        n += flag(out, module, describe(pts[i], with_x), what_of(errors[i]));
    }
    return n;
}

void add_profile_rows(ResultTable& t, const std::vector<Cell>& prefix, const std::vector<double>& profile,
                      double center, int half_width) {
    const int c = static_cast<int>(std::floor(center));
    for (int n = c - half_width; n <= c + half_width + 1; ++n) {
        if (n < 0 || n >= static_cast<int>(profile.size())) continue;
        std::vector<Cell> row = prefix;
        row.emplace_back(static_cast<long long>(n));
        row.emplace_back(static_cast<double>(n) - center);
        row.emplace_back(profile[static_cast<std::size_t>(n)]);
        t.add(std::move(row));
    }
}

void validate_points(const json& cfg, const std::vector<Point>& pts, int n_qubits) {
    for (const auto& p : pts) model_from(cfg.at("model"), p.delta, p.g, n_qubits, p.x);
}

// ---------------------------------------------------------------- gs1q

RunOutcome run_gs1q(const json& cfg) {
    RunOutcome out;
    const auto pts = sweep_points(cfg.at("sweep"), false);
    validate_points(cfg, pts, 1);
    const auto opt = solver_from(cfg);
    struct R {
        PolaronSolution1Q sol;
    };
    std::vector<std::exception_ptr> err;
    auto res = map_points<R>(pts, [&](const Point& p) {
        return R{solve_1q(model_from(cfg.at("model"), p.delta, p.g, 1), opt)};
    }, err);
    ResultTable t;
    t.name = "gs1q";
    t.columns = {"delta", "g", "delta_r", "delta_r_ratio", "p_e", "e_gs", "sigma_z", "iterations", "residual", "status"};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        if (err[i]) {
            t.add({p.delta, p.g, kNaN, kNaN, kNaN, kNaN, kNaN, 0LL, kNaN, status_of(err[i])});
            continue;
        }
        const auto& s = res[i].sol;
        t.add({p.delta, p.g, s.delta_r, s.delta_r / p.delta, excited_probability(s, p.delta), s.e_gs,
               sigma_z_gs(s, p.delta), static_cast<long long>(s.iterations), s.residual, std::string("ok")});
    }
    t.metadata["n_sites"] = cfg["model"]["n_sites"];
    out.flagged_points = count_flagged(out, "gs1q", pts, err, false);
    out.tables = {t};
    return out;
}

// ---------------------------------------------------------------- bound1q

RunOutcome run_bound1q(const json& cfg) {
    RunOutcome out;
    const auto pts = sweep_points(cfg.at("sweep"), false);
    validate_points(cfg, pts, 1);
    const auto opt = solver_from(cfg);
    struct R {
        PolaronSolution1Q sol;
        BoundState bs;
        BoundState rwa;
        ModelParams m;
    };
    std::vector<std::exception_ptr> err;
    auto res = map_points<R>(pts, [&](const Point& p) {
        R r;
        r.m = model_from(cfg.at("model"), p.delta, p.g, 1);
        r.sol = solve_1q(r.m, opt);
        r.bs = find_bound_state_1q(r.sol, r.m);
        r.rwa = rwa_lowest_bound_state(r.m);
        return r;
    }, err);
    ResultTable t;
    t.name = "bound1q";
    t.columns = {"delta", "g", "e_gs", "e1", "band_bottom", "below_band", "e1_rwa", "relative_difference",
                 "lambda0", "kappa", "localization_length", "kappa_gs", "upper_state_possible", "status"};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        const ModelParams m = model_from(cfg.at("model"), p.delta, p.g, 1);
        if (err[i]) {
            t.add({p.delta, p.g, kNaN, kNaN, band_bottom(m), 0LL, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN,
                   static_cast<long long>(upper_bound_state_possible(m)), status_of(err[i])});
            continue;
        }
        const auto& r = res[i];
        t.add({p.delta, p.g, r.sol.e_gs, r.bs.energy, band_bottom(m), static_cast<long long>(r.bs.energy < band_bottom(m)),
               r.rwa.energy, std::abs(r.bs.energy - r.rwa.energy) / std::abs(r.rwa.energy), r.bs.lambda0, r.bs.kappa,
               sebs_localization_length(r.bs, r.sol, m), gs_kappa(r.sol, m),
               static_cast<long long>(upper_bound_state_possible(m)), std::string("ok")});
    }

    ResultTable prof;
    prof.name = "bound1q_profiles";
    prof.columns = {"delta", "g", "method", "n", "offset", "value"};
    const auto& pc = cfg.at("profiles");
    const int hw = pc.at("half_width").get<int>();
    const auto pg = axis(pc.at("g"), "profiles.g");
    const auto pd = axis(pc.at("delta"), "profiles.delta");
    out.flagged_points = count_flagged(out, "bound1q", pts, err, false);
    for (double d : pd)
        for (double g : pg) {
            const auto m = model_from(cfg.at("model"), d, g, 1);
            try {
                const auto sol = solve_1q(m, opt);
                const auto bs = find_bound_state_1q(sol, m);
                const auto rwa = rwa_lowest_bound_state(m);
                const double c = m.positions[0];
                add_profile_rows(prof, {d, g, std::string("polaron_sebs")}, sebs_photon_distribution(bs, sol, m), c, hw);
                add_profile_rows(prof, {d, g, std::string("rwa_sebs")}, rwa_bound_photon_distribution(rwa), c, hw);
                add_profile_rows(prof, {d, g, std::string("polaron_gs")}, photon_distribution_gs(sol, m), c, hw);
            } catch (const ConfigError&) {
                throw;
            } catch (const std::exception& e) {
                out.flagged_points += flag(out, "bound1q", describe({d, g, 0}, false), e.what());
            }
        }
    out.tables = {t, prof};
    return out;
}

// ---------------------------------------------------------------- gsphotons

RunOutcome run_gsphotons(const json& cfg) {
    RunOutcome out;
    const auto pts = sweep_points(cfg.at("sweep"), true);
    validate_points(cfg, pts, 2);
    const auto opt = solver_from(cfg);
    const int hw = cfg.at("profiles").at("half_width").get<int>();
    ResultTable t;
    t.name = "gsphotons";
    t.columns = {"system", "delta", "g", "x", "method", "n", "offset", "value"};
        std::vector<std::pair<double, double>> singles;
    for (const auto& p : pts)
        if (singles.empty() || singles.back() != std::make_pair(p.delta, p.g)) singles.emplace_back(p.delta, p.g);
    for (auto [d, g] : singles) {
        const auto m = model_from(cfg.at("model"), d, g, 1);
        try {
            const auto sol = solve_1q(m, opt);
            const double c = m.positions[0];
            add_profile_rows(t, {std::string("1q"), d, g, 0LL, std::string("polaron")}, photon_distribution_gs(sol, m), c, hw);
            add_profile_rows(t, {std::string("1q"), d, g, 0LL, std::string("rwa")}, rwa_gs_photons(m), c, hw);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            out.flagged_points += flag(out, "gsphotons", describe({d, g, 0}, false), e.what());
        }
    }
    for (const auto& p : pts) {
        const auto m = model_from(cfg.at("model"), p.delta, p.g, 2, p.x);
        try {
            const auto sol = solve_2q(m, opt);
            const double c = 0.5 * (m.positions[0] + m.positions[1]);
            const int w = hw + p.x / 2;
            const std::vector<Cell> base{std::string("2q"), p.delta, p.g, static_cast<long long>(p.x)};
            auto pre = [&](const char* method) {
                auto v = base;
                v.emplace_back(std::string(method));
                return v;
            };
            add_profile_rows(t, pre("polaron"), photon_distribution_gs_2q(sol, m), c, w);
            add_profile_rows(t, pre("rwa"), rwa_gs_photons(m), c, w);
            // two independent single-qubit clouds at the same positions
            std::vector<double> sum(static_cast<std::size_t>(m.n_sites), 0.0);
            for (int q = 0; q < 2; ++q) {
                ModelParams mq = ModelParams::single(p.delta, p.g, m.omega0, m.lambda_hop, m.n_sites);
                mq.positions = {m.positions[static_cast<std::size_t>(q)]};
                const auto s1 = solve_1q(mq, opt);
                const auto prof = photon_distribution_gs(s1, mq);
                for (std::size_t n = 0; n < sum.size(); ++n) sum[n] += prof[n];
            }
            add_profile_rows(t, pre("polaron_1q_sum"), sum, c, w);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            out.flagged_points += flag(out, "gsphotons", describe(p, true), e.what());
        }
    }
    t.metadata["interference_coefficient"] = kGsInterferenceCoefficient;
    out.tables = {t};
    return out;
}

// ---------------------------------------------------------------- benchmark-ed

RunOutcome run_benchmark_ed(const json& cfg) {
    RunOutcome out;
    const auto pts = sweep_points(cfg.at("sweep"), false);
    validate_points(cfg, pts, 1);
    const auto opt = solver_from(cfg);
    const auto& eb = cfg.at("ed");
    const EdConfig ed = ed_from(eb);
    const double rel_tol = eb.at("truncation_tolerance").get<double>();
    const int bumps = eb.at("max_bumps").get<int>();
    ResultTable summary, prof;
    summary.name = "benchmark_ed_summary";
    summary.columns = {"delta", "g", "n_sites", "n_max", "n_total", "dimension", "truncation_change", "e_ed",
                       "e_polaron", "gs_error_polaron", "gs_error_rwa", "sebs_error_polaron", "sebs_error_rwa",
                       "sigma_z_ed", "sigma_z_polaron", "status"};
    prof.name = "benchmark_ed_profiles";
    prof.columns = {"state", "method", "delta", "g", "n", "offset", "value"};
        for (const auto& p : pts) {
        const auto m = model_from(cfg.at("model"), p.delta, p.g, 1);
        try {
            const auto tr = lowest_states_converged(m, ed, 2, rel_tol, bumps);
            const auto& r = tr.result;
            const auto sol = solve_1q(m, opt);
            const auto gs_pol = photon_distribution_gs(sol, m);
            const auto gs_rwa = rwa_gs_photons(m);
            const auto bs = find_bound_state_1q(sol, m);
            const auto sebs_pol = sebs_photon_distribution(bs, sol, m);
            const auto sebs_rwa = rwa_bound_photon_distribution(rwa_lowest_bound_state(m));
            const auto& gs = r.states.at(0);
            const auto& ex = r.states.at(1);
            summary.add({p.delta, p.g, static_cast<long long>(m.n_sites), static_cast<long long>(r.n_max),
                         static_cast<long long>(r.n_total), static_cast<long long>(r.dimension), tr.relative_change,
                         gs.energy, sol.e_gs, relative_l2(gs_pol, gs.photon_profile),
                         relative_l2(gs_rwa, gs.photon_profile), relative_l2(sebs_pol, ex.photon_profile),
                         relative_l2(sebs_rwa, ex.photon_profile), gs.sigma_z[0], sigma_z_gs(sol, p.delta),
                         std::string("ok")});
            const double c = m.positions[0];
            const int hw = m.n_sites;
            auto rows = [&](const char* state, const char* method, const std::vector<double>& v) {
                add_profile_rows(prof, {std::string(state), std::string(method), p.delta, p.g}, v, c, hw);
            };
            rows("gs", "polaron", gs_pol);
            rows("gs", "rwa", gs_rwa);
            rows("gs", "ed", gs.photon_profile);
            rows("sebs", "polaron", sebs_pol);
            rows("sebs", "rwa", sebs_rwa);
            rows("sebs", "ed", ex.photon_profile);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            out.flagged_points += flag(out, "benchmark-ed", describe(p, false), e.what());
            const std::string st = dynamic_cast<const ConvergenceError*>(&e) ? "convergence_error" : "solver_error";
            summary.add({p.delta, p.g, static_cast<long long>(m.n_sites), 0LL, 0LL, 0LL, kNaN, kNaN, kNaN, kNaN, kNaN,
                         kNaN, kNaN, kNaN, kNaN, st});
        }
    }
    summary.metadata["boundary"] = "ED uses an open chain; the polaron and RWA profiles use the periodic momentum grid";
    out.tables = {summary, prof};
    return out;
}

// ---------------------------------------------------------------- emission

RunOutcome run_emission(const json& cfg) {
    RunOutcome out;
    const auto pts = sweep_points(cfg.at("sweep"), false);
    validate_points(cfg, pts, 1);
    const auto opt = solver_from(cfg);
    const auto& db = cfg.at("dynamics");
    EmissionOptions eo;
    eo.t_max = db.at("t_max").get<double>();
    eo.dt = db.at("dt").get<double>();
    eo.extend_to_plateau = db.at("extend_to_plateau").get<bool>();
    eo.plateau_variance = db.at("plateau_variance").get<double>();
    const int stride = db.at("output_stride").get<int>();
    if (!(eo.t_max > 0) || !(eo.dt > 0) || stride < 1) throw ConfigError("config: dynamics.t_max, dt and output_stride must be positive");
    struct R {
        PolaronSolution1Q sol;
        EmissionResult em;
        double rate = kNaN;
    };
    std::vector<std::exception_ptr> err;
    auto res = map_points<R>(pts, [&](const Point& p) {
        R r;
        const auto m = model_from(cfg.at("model"), p.delta, p.g, 1);
        r.sol = solve_1q(m, opt);
        r.em = evolve_emission(r.sol, m, eo);
        try {
            r.rate = fit_decay_rate(r.em.times, r.em.qubit_population);
        } catch (const SolverError&) {
            r.rate = kNaN;
        }
        return r;
    }, err);
    ResultTable sum, trace;
    sum.name = "emission_summary";
    sum.columns = {"delta", "g", "delta_r", "lambda0", "stationary", "tail_mean", "tail_difference", "fitted_rate",
                   "rate_j_delta_r", "rate_j_delta", "well_inside_band", "plateau_reached", "t_max", "norm_drift", "status"};
    trace.name = "emission_trace";
    trace.columns = {"delta", "g", "t", "sigma_z", "qubit_population", "markov_fgr", "markov_renormalized"};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        const auto m = model_from(cfg.at("model"), p.delta, p.g, 1);
        if (err[i]) {
            sum.add({p.delta, p.g, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, 0LL, 0LL, kNaN, kNaN, status_of(err[i])});
            continue;
        }
        const auto& r = res[i];
        const double lo = band_bottom(m), hi = band_top(m);
        const double jr = r.sol.delta_r > lo && r.sol.delta_r < hi ? spectral_density(r.sol.delta_r, m) : kNaN;
        const double jd = p.delta > lo && p.delta < hi ? spectral_density(p.delta, m) : kNaN;
        sum.add({p.delta, p.g, r.sol.delta_r, r.em.lambda0, r.em.stationary_prediction, r.em.tail_mean,
                 r.em.tail_mean - r.em.stationary_prediction, r.rate, jr, jd,
                 static_cast<long long>(well_inside_band(r.sol.delta_r, m)), static_cast<long long>(r.em.plateau_reached),
                 r.em.t_max_used, r.em.norm_drift, std::string("ok")});
        for (std::size_t k = 0; k < r.em.times.size(); k += static_cast<std::size_t>(stride)) {
            trace.add({p.delta, p.g, r.em.times[k], r.em.sigma_z_lab[k], r.em.qubit_population[k],
                       r.em.markov_available ? r.em.markov_fgr[k] : kNaN,
                       r.em.markov_available ? r.em.markov_renormalized[k] : kNaN});
        }
    }
    sum.metadata["revival_cap"] = "t_max is capped at n_sites / (4 lambda)";
    out.flagged_points = count_flagged(out, "emission", pts, err, false);
    out.tables = {sum, trace};
    return out;
}

// ---------------------------------------------------------------- gs2q

RunOutcome run_gs2q(const json& cfg) {
    RunOutcome out;
    const auto pts = sweep_points(cfg.at("sweep"), true);
    validate_points(cfg, pts, 2);
    const auto opt = solver_from(cfg);
    struct R {
        PolaronSolution2Q s2;
        PolaronSolution1Q s1;
    };
    std::vector<std::exception_ptr> err;
    auto res = map_points<R>(pts, [&](const Point& p) {
        R r;
        r.s2 = solve_2q(model_from(cfg.at("model"), p.delta, p.g, 2, p.x), opt);
        r.s1 = solve_1q(model_from(cfg.at("model"), p.delta, p.g, 1), opt);
        return r;
    }, err);
    ResultTable t;
    t.name = "gs2q";
    t.columns = {"delta", "g", "x", "delta_r_2q", "delta_r_1q", "delta_r_ratio", "j_ising", "e_script", "theta",
                 "e_gs", "p_e", "iterations", "residual", "status"};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        if (err[i]) {
            t.add({p.delta, p.g, static_cast<long long>(p.x), kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, 0LL, kNaN,
                   status_of(err[i])});
            continue;
        }
        const auto& r = res[i];
        t.add({p.delta, p.g, static_cast<long long>(p.x), r.s2.delta_r, r.s1.delta_r, r.s2.delta_r / r.s1.delta_r,
               r.s2.j_ising, r.s2.e_script, r.s2.theta, r.s2.e_gs, excited_probability_2q(r.s2, p.delta),
               static_cast<long long>(r.s2.iterations), r.s2.residual, std::string("ok")});
    }
    out.flagged_points = count_flagged(out, "gs2q", pts, err, true);
    out.tables = {t};
    return out;
}

// ---------------------------------------------------------------- bound2q

RunOutcome run_bound2q(const json& cfg) {
    RunOutcome out;
    const auto pts = sweep_points(cfg.at("sweep"), true);
    validate_points(cfg, pts, 2);
    const auto opt = solver_from(cfg);
    struct R {
        PolaronSolution2Q sol;
        std::vector<BoundState> pol;
        std::vector<RwaBoundState> rwa;
    };
    std::vector<std::exception_ptr> err;
    auto res = map_points<R>(pts, [&](const Point& p) {
        R r;
        const auto m = model_from(cfg.at("model"), p.delta, p.g, 2, p.x);
        r.sol = solve_2q(m, opt);
        r.pol = find_bound_states_2q(r.sol, m);
        r.rwa = rwa_bound_states(m);
        return r;
    }, err);
    auto energy = [](const std::vector<BoundState>& v, Parity par) {
        for (const auto& b : v)
            if (b.parity == par) return b.energy;
        return kNaN;
    };
    ResultTable t;
    t.name = "bound2q";
    t.columns = {"delta", "g", "x", "j_ising", "n_polaron", "e_s", "e_a", "splitting", "n_rwa", "e_s_rwa", "e_a_rwa",
                 "splitting_rwa", "status"};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        if (err[i]) {
            t.add({p.delta, p.g, static_cast<long long>(p.x), kNaN, 0LL, kNaN, kNaN, kNaN, 0LL, kNaN, kNaN, kNaN,
                   status_of(err[i])});
            continue;
        }
        const auto& r = res[i];
        std::vector<BoundState> below;
        for (const auto& b : r.rwa)
            if (!b.above_band) below.push_back(b.state);
        const double es = energy(r.pol, Parity::symmetric), ea = energy(r.pol, Parity::antisymmetric);
        const double rs = energy(below, Parity::symmetric), ra = energy(below, Parity::antisymmetric);
        t.add({p.delta, p.g, static_cast<long long>(p.x), r.sol.j_ising, static_cast<long long>(r.pol.size()), es, ea,
               std::abs(ea - es), static_cast<long long>(below.size()), rs, ra, std::abs(ra - rs), std::string("ok")});
    }

    ResultTable prof;
    prof.name = "bound2q_profiles";
    prof.columns = {"delta", "g", "x", "parity", "method", "n", "offset", "value"};
    const auto& pc = cfg.at("profiles");
    const int hw = pc.at("half_width").get<int>();
    out.flagged_points = count_flagged(out, "bound2q", pts, err, true);
    for (int x : int_axis(pc.at("x"), "profiles.x"))
        for (double d : axis(cfg["sweep"]["delta"], "delta"))
            for (double g : axis(cfg["sweep"]["g"], "g")) {
                const auto m = model_from(cfg.at("model"), d, g, 2, x);
                try {
                    const auto sol = solve_2q(m, opt);
                    const double c = 0.5 * (m.positions[0] + m.positions[1]);
                    for (const auto& b : find_bound_states_2q(sol, m))
                        add_profile_rows(prof, {d, g, static_cast<long long>(x), to_string(b.parity), std::string("polaron")},
                                         bound_photon_distribution_2q(b, sol, m), c, hw + x / 2);
                    for (const auto& b : rwa_bound_states(m))
                        if (!b.above_band)
                            add_profile_rows(prof, {d, g, static_cast<long long>(x), to_string(b.state.parity), std::string("rwa")},
                                             rwa_bound_photon_distribution(b.state), c, hw + x / 2);
                } catch (const ConfigError&) {
                    throw;
                } catch (const std::exception& e) {
                    out.flagged_points += flag(out, "bound2q", describe({d, g, x}, true), e.what());
                }
            }
    out.tables = {t, prof};
    return out;
}

// ---------------------------------------------------------------- transfer

RunOutcome run_transfer(const json& cfg) {
    RunOutcome out;
    const auto& mb = cfg.at("model");
    const double delta = mb.at("delta").get<double>();
    const double g = mb.at("g").get<double>();
    const int x = mb.at("x").get<int>();
    const auto m = model_from(mb, delta, g, 2, x);
    const auto& pb = cfg.at("protocol");
    const double ramp_factor = pb.at("ramp_factor").get<double>();
    TransferOptions to;
    to.dt = pb.at("dt").get<double>();
    to.sample_every = pb.at("sample_every").get<int>();
    to.krylov_tolerance = pb.at("krylov_tolerance").get<double>();
    const double threshold = pb.at("adiabatic_threshold").get<double>();
    const json hold_cfg = pb.at("hold");
    if (!(ramp_factor > 0) || !(to.dt > 0) || to.sample_every < 1)
        throw ConfigError("config: protocol.ramp_factor, dt and sample_every must be positive");
    if (!(hold_cfg.is_number() || hold_cfg == "tuned" || hold_cfg == "tight_binding"))
        throw ConfigError("config: protocol.hold must be a number, \"tuned\" or \"tight_binding\"");
    if (!(g > 0)) throw ConfigError("config: transfer needs g > 0");

    const auto sol = solve_2q(m, solver_from(cfg));
    const auto states = find_bound_states_2q(sol, m);
    const TightBinding tb = extract_tight_binding(states);
    const auto eq = equal_coupling_dynamics(m, g);
    const double tb_hold = std::numbers::pi / (2.0 * std::abs(tb.tau));
    double hold = tb_hold;
    if (hold_cfg.is_number())
        hold = hold_cfg.get<double>();
    else if (hold_cfg == "tuned")
        hold = eq.first_max_time;
    const double ramp_time = ramp_factor / std::abs(tb.tau);
    const auto full = ProtocolSchedule::standard(g, ramp_time, hold);
    const auto tb_schedule = ProtocolSchedule::standard(g, ramp_time, tb_hold);
    const auto tb_trace = simulate_tight_binding(tb, tb_schedule, to.dt);
    const auto trace = simulate_protocol(m, full, to);
    const auto adi = adiabaticity_check(full, m, threshold);

    ResultTable sum;
    sum.name = "transfer_summary";
    sum.columns = {"delta", "g", "x", "epsilon", "tau", "hold", "ramp_time", "rabi_period", "pi_over_tau",
                   "fidelity", "tight_binding_fidelity", "norm_drift", "steps"};
    sum.add({delta, g, static_cast<long long>(x), tb.epsilon, tb.tau, hold, ramp_time, eq.rabi_period,
             std::numbers::pi / std::abs(tb.tau), trace.fidelity, tb_trace.fidelity, trace.norm_drift,
             static_cast<long long>(trace.steps)});
    sum.metadata["note"] =
        "direct dipole-dipole coupling between the qubits is not simulated; it is a static comparison only";

    ResultTable tr;
    tr.name = "transfer_trace";
    tr.columns = {"t", "g1", "g2", "population_left", "population_right"};
    for (std::size_t i = 0; i < trace.times.size(); ++i)
        tr.add({trace.times[i], trace.g1[i], trace.g2[i], trace.population_left[i], trace.population_right[i]});

    ResultTable ad;
    ad.name = "transfer_adiabaticity";
    ad.columns = {"segment", "max_rate", "min_gap", "ratio", "diabatic", "violates"};
    for (const auto& a : adi)
        ad.add({a.name, a.max_rate, a.min_gap, a.ratio, static_cast<long long>(a.diabatic),
                static_cast<long long>(a.violates)});
    ad.metadata["threshold"] = threshold;
    out.tables = {sum, tr, ad};
    return out;
}

}  // namespace

RunOutcome run_experiment(const std::string& sub, const json& config) {
    if (sub == "gs1q") return run_gs1q(config);
    if (sub == "bound1q") return run_bound1q(config);
    if (sub == "gsphotons") return run_gsphotons(config);
    if (sub == "benchmark-ed") return run_benchmark_ed(config);
    if (sub == "emission") return run_emission(config);
    if (sub == "gs2q") return run_gs2q(config);
    if (sub == "bound2q") return run_bound2q(config);
    if (sub == "transfer") return run_transfer(config);
    throw ConfigError("unknown subcommand '" + sub + "'");
}

int run_and_write(const std::string& sub, const json& config, const std::filesystem::path& out_dir,
                  std::ostream& log) {
    const RunOutcome out = run_experiment(sub, config);
    for (const auto& m : out.messages) log << "wqed: flagged " << m << '\n';
    const std::string hash = config_hash(config);
    for (const auto& t : out.tables) write_table(out_dir, sub, t, config, hash);
    return out.flagged_points > 0 ? 2 : 0;
}

}  // namespace wqed
