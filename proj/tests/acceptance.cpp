// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
// Each criterion pins its tolerances here; configurations were fixed by the
// validation runs recorded alongside the tests.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "sqglab/datasets.hpp"
#include "sqglab/interp.hpp"
#include "sqglab/selfsim.hpp"
#include "sqglab/snapshot.hpp"

using namespace sqg;
using clk = std::chrono::steady_clock;

namespace {

struct Criterion {
    int id;
    std::string label;
    bool pass;
    std::string detail;
};

std::vector<Criterion> g_results;

void record(int id, const std::string& label, bool pass, const std::string& detail) {
    g_results.push_back({id, label, pass, detail});
    std::printf("[%s] criterion %2d: %-34s %s\n", pass ? "PASS" : "FAIL", id, label.c_str(),
                detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

double seconds_since(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

HomogeneousProfile sin3() {
    return HomogeneousProfile::from_function([](double phi) { return std::sin(3.0 * phi); });
}

// ---------------------------------------------------------------- criterion 1
void criterion_operator_exactness() {
    auto t0 = clk::now();
    Grid g = make_grid(64, 2.0);
    const double k1 = M_PI / g.l, k2 = 2.0 * M_PI / g.l;
    RealField mode = RealField::from_function(
        g, [&](double x, double y) { return std::cos(k1 * x) * std::cos(k2 * y); });
    SpectralField M = to_spectral(mode);
    const double mag = std::hypot(k1, k2);

    double worst = 0.0;
    for (double s : {0.5, 1.0, 2.0}) {
        RealField L = to_real(fractional_laplacian(M, s));
        for (size_t i = 0; i < L.values().size(); ++i)
            worst = std::max(worst, std::abs(L.values()[i] - std::pow(mag, s) * mode.values()[i]) /
                                        std::pow(mag, s));
    }
    {
        RealField P = to_real(poisson_semigroup(M, 0.7));
        for (size_t i = 0; i < P.values().size(); ++i)
            worst = std::max(worst,
                             std::abs(P.values()[i] - std::exp(-0.7 * mag) * mode.values()[i]));
    }
    {
        // Rperp of cos(k x): v = (0, -sin(k x))
        RealField c = RealField::from_function(g, [&](double x, double) { return std::cos(k1 * x); });
        VectorField v = riesz_perp(to_spectral(c));
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) {
                worst = std::max(worst, std::abs(v.v1(i, j)));
                worst = std::max(worst, std::abs(v.v2(i, j) + std::sin(k1 * g.x(i))));
            }
    }
    double dt = seconds_since(t0);
    record(1, "operator exactness", worst <= 1e-12 && dt < 1.0,
           fmt("(sup err=%.2e, thr=1e-12; %.2fs < 1s)", worst, dt));
}

// ---------------------------------------------------------------- criterion 2
void criterion_semigroup() {
    Grid g64 = make_grid(64, 2.0);
    SpectralField F = to_spectral(random_smooth_field(g64, 37, 1.0));
    SpectralField ab = poisson_semigroup(poisson_semigroup(F, 0.3), 0.5);
    SpectralField c = poisson_semigroup(F, 0.8);
    double law = 0.0;
    for (size_t i = 0; i < c.data().size(); ++i)
        law = std::max(law, std::abs(ab.data()[i] - c.data()[i]));

    // kernel constant derived from the symbol, then a convolution cross-check
    Grid g = make_grid(256, 12.0);
    const double t = 0.5;
    SpectralField delta(g);
    for (auto& z : delta.data()) z = 1.0 / (4.0 * g.l * g.l);
    RealField Pt = to_real(poisson_semigroup(delta, t));
    const double c_derived = Pt(g.n / 2, g.n / 2) * t * t;

    RealField f = compact_bump(g, 0.3, -0.2, 1.0, 1.0);
    RealField sg = to_real(poisson_semigroup(to_spectral(f), t));

    const int NG = 80;
    std::vector<double> gx(NG), gw(NG);
    for (int i = 0; i < NG; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (NG + 0.5));
        double p1 = 0.0, dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            p1 = x;
            for (int kk = 2; kk <= NG; ++kk) {
                double pk = ((2 * kk - 1) * x * p1 - (kk - 1) * p0) / kk;
                p0 = p1;
                p1 = pk;
            }
            dp = NG * (x * p1 - p0) / (x * x - 1.0);
            double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        gx[i] = x;
        gw[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    double conv_err = 0.0;
    for (int trial = 0; trial < 9; ++trial) {
        double px = -1.5 + trial * 0.4, py = 0.7 - trial * 0.3;
        double conv = 0.0;
        for (int a = 0; a < NG; ++a)
            for (int b = 0; b < NG; ++b) {
                double ya = 0.3 + gx[a], yb = -0.2 + gx[b];
                double rr = std::hypot(ya - 0.3, yb + 0.2);
                if (rr >= 1.0) continue;
                double fv = std::exp(1.0 - 1.0 / (1.0 - rr * rr));
                double d2 = (px - ya) * (px - ya) + (py - yb) * (py - yb);
                conv += gw[a] * gw[b] * c_derived * t / std::pow(d2 + t * t, 1.5) * fv;
            }
        conv_err = std::max(conv_err, std::abs(conv - interp_bicubic(sg, px, py)));
    }
    record(2, "semigroup law + poisson kernel", law <= 1e-12 && conv_err <= 1e-4,
           fmt("(law=%.2e thr=1e-12; kernel=%.2e thr=1e-4, c*2pi-1=%.1e)", law, conv_err,
               c_derived * 2.0 * M_PI - 1.0));
}

// ---------------------------------------------------------------- criterion 3
void criterion_radial_reduction() {
    auto t0 = clk::now();
    Grid g = make_grid(256, 6.0);
    RealField th0 = ring_bump(g, 1.5, 0.35, 1.0);
    SolverConfig cfg;
    cfg.dt = 2.5e-3;
    cfg.t_end = 1.0;
    cfg.diag_every = 0;
    cfg.snapshot_every = 50;
    Trajectory tr = run(th0, cfg);

    SpectralField T0 = to_spectral(th0);
    dealias_inplace(T0);
    double worst = 0.0;
    for (size_t s = 0; s < tr.times.size(); ++s) {
        RealField lin = to_real(poisson_semigroup(T0, tr.times[s]));
        for (size_t k = 0; k < lin.values().size(); ++k)
            worst = std::max(worst, std::abs(lin.values()[k] - tr.snapshots[s].values()[k]));
    }
    double dt = seconds_since(t0);
    record(3, "radial reduction", worst <= 1e-6 * th0.max_abs() && dt < 60.0,
           fmt("(err=%.2e, thr=1e-6; %.0fs < 60s)", worst / th0.max_abs(), dt));
}

// ---------------------------------------------------------------- criterion 4
void criterion_max_principle() {
    auto t0 = clk::now();
    double worst = -1.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Grid g = make_grid(128, 4.0);
        RealField th0 = random_symmetric_field(g, SymmetryGroup::rotation(3), 900 + seed, 1.0,
                                               2.2);
        SolverConfig cfg;
        cfg.dt = 2e-3;
        cfg.t_end = 1.0;
        cfg.diag_every = 5;
        cfg.snapshot_every = 0;
        Trajectory tr = run(th0, cfg);
        for (const auto& d : tr.diagnostics) worst = std::max(worst, d.max_principle_margin);
    }
    double dt = seconds_since(t0);
    record(4, "maximum principle (10 seeds)", worst <= 1e-6 && dt < 300.0,
           fmt("(margin=%.2e, thr=1e-6; %.0fs < 300s)", worst, dt));
}

// ---------------------------------------------------------------- criterion 5
void criterion_gauge() {
    double worst_exact = 0.0, worst_m3 = 0.0;

    auto run_case = [](const Grid& g, const RealField& th0, double dt_step, double t_end) {
        SolverConfig cfg;
        cfg.dt = dt_step;
        cfg.t_end = t_end;
        cfg.diag_every = 1;
        cfg.snapshot_every = 0;
        Trajectory tr = run(th0, cfg);
        double w = 0.0;
        for (const auto& d : tr.diagnostics)
            for (double m : d.mean_drift) w = std::max(w, m);
        return w / th0.max_abs();
    };

    {
        Grid g = make_grid(256, 6.0);
        for (int m : {2, 4})
            worst_exact = std::max(
                worst_exact, run_case(g, gauge_check_field(g, SymmetryGroup::rotation(m), 100 + m),
                                      2e-3, 0.2));
        worst_exact = std::max(
            worst_exact, run_case(g, gauge_check_field(g, SymmetryGroup::radial(), 7), 2e-3, 0.2));
    }
    {
        // m=3 has no exact lattice realization; the moment-cancelled data on a
        // wide box keeps the image leakage below the tolerance
        Grid g = make_grid(512, 12.0);
        worst_m3 = run_case(g, gauge_check_field(g, SymmetryGroup::rotation(3), 103), 5e-3, 0.5);
    }
    double worst = std::max(worst_exact, worst_m3);
    record(5, "velocity gauge (drift means)", worst <= 1e-8,
           fmt("(exact m: %.1e; m=3: %.2e; thr=1e-8)", worst_exact, worst_m3));
}

// ---------------------------------------------------------------- criterion 6
void criterion_xp_machinery() {
    auto cos3 = HomogeneousProfile::from_function([](double phi) { return std::cos(3.0 * phi); });
    NormConfig nc;

    // closed form against independent 2D quadrature
    double closed = std::abs(xp_norm(cos3, nc) - 1.0 / std::sqrt(2.0));
    double acc = 0.0;
    const int nr = 400, na = 512;
    for (int a = 0; a < na; ++a) {
        double c = std::cos(3.0 * (2.0 * M_PI * a / na));
        for (int r = 0; r < nr; ++r) acc += c * c * ((r + 0.5) / nr);
    }
    acc *= (1.0 / nr) * (2.0 * M_PI / na) / M_PI;
    double oracle = std::abs(std::sqrt(acc) - xp_norm(cos3, nc));

    // radius independence: per-radius 2D polar quadrature (the radial factor
    // cancels by 0-homogeneity, which is what makes the X_p ladder natural)
    auto ball_avg = [&](double R) {
        double a2 = 0.0;
        const int nr2 = 300, na2 = 400;
        for (int a = 0; a < na2; ++a) {
            double v = cos3.eval_angle(2.0 * M_PI * a / na2);
            for (int r = 0; r < nr2; ++r) a2 += v * v * (R * (r + 0.5) / nr2);
        }
        return std::sqrt(a2 * (R / nr2) * (2.0 * M_PI / na2) / (M_PI * R * R));
    };
    double spread = 0.0;
    double ref = ball_avg(1.0);
    for (double R : {2.0, 8.0, 64.0, 1024.0})
        spread = std::max(spread, std::abs(ball_avg(R) - ref));

    // riesz boundedness ratio: 20 seeded symmetric profiles, quadrature doubling
    double ratio_change = 0.0, ratio_min = 1e99, ratio_max = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        int m = 2 + static_cast<int>(s % 4); // rotation orders 2..5
        SymmetryGroup G = (s % 2) ? SymmetryGroup::rotation_reflection(m)
                                  : SymmetryGroup::rotation(m);
        auto prof = random_symmetric_profile(G, 700 + s, 1.0);
        auto base = modified_riesz_profile(prof, 64, 1.0, {});
        auto dbl = modified_riesz_profile(prof, 64, 1.0, ModifiedRieszConfig{}.doubled());
        std::vector<double> m1(64), m2(64);
        for (int k = 0; k < 64; ++k) {
            m1[k] = std::hypot(base[0].samples()[k], base[1].samples()[k]);
            m2[k] = std::hypot(dbl[0].samples()[k], dbl[1].samples()[k]);
        }
        for (double p : {3.0, 4.0, 6.0}) {
            nc.p = p;
            double fn = xp_norm(prof, nc);
            double r1 = xp_norm(HomogeneousProfile(m1), nc) / fn;
            double r2 = xp_norm(HomogeneousProfile(m2), nc) / fn;
            if (!std::isfinite(r1) || !std::isfinite(r2)) {
                ratio_change = 1e99;
                break;
            }
            ratio_change = std::max(ratio_change, std::abs(r2 - r1) / r1);
            ratio_min = std::min(ratio_min, r1);
            ratio_max = std::max(ratio_max, r1);
        }
    }

    bool pass = closed <= 1e-10 && oracle <= 1e-6 && spread <= 1e-6 && ratio_change < 0.10;
    record(6, "X_p machinery + riesz bound", pass,
           fmt("(closed=%.1e; oracle=%.1e; R-spread=%.1e thr=1e-6; ratios in [%.2f,%.2f], change=%.2e<0.1)",
               closed, oracle, spread, ratio_min, ratio_max, ratio_change));
}

// ---------------------------------------------------------------- criterion 7
void criterion_energy_structure() {
    // energy identity + Lp monotonicity on an evolution
    Grid g = make_grid(128, 4.0);
    RealField th0 = random_symmetric_field(g, SymmetryGroup::rotation(3), 901, 1.0, 2.2);
    SolverConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = 0.5;
    cfg.diag_every = 5;
    cfg.snapshot_every = 25;
    Trajectory tr = run(th0, cfg);
    double res = 0.0;
    for (const auto& d : tr.diagnostics) res = std::max(res, d.energy_residual);

    double lp_violation = 0.0;
    double p2 = 1e99, p4 = 1e99, pi = 1e99;
    for (const auto& f : tr.snapshots) {
        double s2 = 0.0, s4 = 0.0, si = 0.0;
        for (double v : f.values()) {
            s2 += v * v;
            s4 += v * v * v * v;
            si = std::max(si, std::abs(v));
        }
        s2 = std::sqrt(s2);
        s4 = std::pow(s4, 0.25);
        lp_violation = std::max({lp_violation, (s2 - p2) / std::max(s2, 1e-30),
                                 (s4 - p4) / std::max(s4, 1e-30), (si - pi) / std::max(si, 1e-30)});
        p2 = s2;
        p4 = s4;
        pi = si;
    }

    // Ju gap over 20 seeds: positive ensemble for all q (the |theta| kink of
    // sign-changing data is not spectrally representable at q=2), plus
    // sign-changing fields for the smooth powers q in {3,4}
    double ju_worst = 0.0;
    auto ju_rel_min = [](const RealField& th, double q) {
        RealField gap = ju_gap(th, q);
        double mn = 0.0;
        for (double v : gap.values()) mn = std::min(mn, v);
        SpectralField T = to_spectral(th);
        dealias_inplace(T);
        RealField thd = to_real(T);
        RealField Lt = to_real(fractional_laplacian(T, 1.0));
        double scale = 0.0;
        const Grid& gg = th.grid();
        for (int i = 0; i < gg.n; ++i)
            for (int j = 0; j < gg.n; ++j)
                scale = std::max(scale, std::abs(q * std::pow(std::abs(thd(i, j)), q - 2.0) *
                                                 thd(i, j) * Lt(i, j)));
        return -mn / std::max(scale, 1e-300);
    };
    for (std::uint64_t s = 0; s < 20; ++s) {
        Grid g2 = make_grid(128, 4.0);
        RealField pos = random_symmetric_field(g2, SymmetryGroup::rotation(3), 400 + s, 0.45, 2.0);
        for (auto& v : pos.values()) v += 1.0;
        for (double q : {2.0, 3.0, 4.0}) ju_worst = std::max(ju_worst, ju_rel_min(pos, q));
    }
    for (std::uint64_t s = 0; s < 20; ++s) {
        Grid g2 = make_grid(256, 4.0);
        RealField th = random_symmetric_field(g2, SymmetryGroup::rotation(3), 300 + s, 1.0, 2.0);
        for (double q : {3.0, 4.0}) ju_worst = std::max(ju_worst, ju_rel_min(th, q));
    }

    bool pass = res <= 1e-4 && lp_violation <= 1e-6 && ju_worst <= 1e-4;
    record(7, "energy structure + ju gap", pass,
           fmt("(residual=%.1e thr=1e-4; Lp up=%.1e thr=1e-6; ju=-%.1e thr=1e-4)", res,
               lp_violation, ju_worst));
}

// ---------------------------------------------------------------- criterion 8
void criterion_at_et_budget() {
    auto t0 = clk::now();
    Grid g = make_grid(128, 6.0);
    RealField th0 = random_symmetric_field(g, SymmetryGroup::rotation(3), 88, 1.0, 0.45 * g.l);
    NormConfig nc;
    nc.p = 4.0;
    double x4 = xp_norm(th0, nc);
    for (auto& v : th0.values()) v /= x4; // ||theta0||_{X_4} = 1
    const double x2sq = std::pow(xp_norm(th0, nc.with_p(2.0)), 2);
    const double budget = 2.2 * x2sq;

    SolverConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = 1.0;
    cfg.diag_every = 0;
    cfg.snapshot_every = 25;
    Trajectory tr = run(th0, cfg);

    // T* = largest trajectory time at which the fixed-R0 budget still holds
    double t_star = 0.0, combo_at_tstar = 0.0;
    for (size_t last = 2; last <= tr.snapshots.size(); ++last) {
        Trajectory pre;
        pre.grid = g;
        pre.times.assign(tr.times.begin(), tr.times.begin() + last);
        pre.snapshots.assign(tr.snapshots.begin(), tr.snapshots.begin() + last);
        double at = at_norm(pre), et = et_norm(pre);
        double combo = at * at + et * et;
        if (combo <= budget) {
            t_star = pre.times.back();
            combo_at_tstar = combo;
        } else {
            break;
        }
    }
    double dt = seconds_since(t0);
    // the T* floor (0.25) was frozen after the first validated run
    bool pass = t_star >= 0.25 && combo_at_tstar <= budget && dt < 300.0;
    record(8, "A_T/E_T budget", pass,
           fmt("(T*=%.2f >= 0.25; combo=%.3f <= %.3f = 2.2 X2^2; %.0fs)", t_star, combo_at_tstar,
               budget, dt));
}

// ---------------------------------------------------------------- criterion 9
void criterion_dss_machinery() {
    // mollifier preserves lambda = 2 discrete self-similarity
    double dss_defect = 0.0;
    {
        Grid g = make_grid(256, 8.0);
        Trajectory tr;
        tr.grid = g;
        for (double t = 0.60; t <= 2.75; t += 0.025) {
            tr.times.push_back(t);
            tr.snapshots.push_back(RealField::from_function(g, [&](double x, double y) {
                double r = std::hypot(x, y) / t;
                double phi = std::atan2(y, x);
                return std::exp(-r * r) * std::cos(3.0 * phi) * r * r * r / (1.0 + r * r * r);
            }));
        }
        VectorField v1 = mollified_drift(tr, 0.25, 2.0, 1.0);
        VectorField v2 = mollified_drift(tr, 0.25, 2.0, 2.0);
        for (int i = 0; i < g.n; ++i) {
            double x = g.x(i);
            for (int j = 0; j < g.n; ++j) {
                double y = g.x(j);
                double r2 = x * x + y * y;
                if (r2 > 9.0 || r2 < 0.04) continue;
                dss_defect = std::max(
                    dss_defect, std::abs(interp_bicubic(v2.v1, 2 * x, 2 * y) - v1.v1(i, j)));
                dss_defect = std::max(
                    dss_defect, std::abs(interp_bicubic(v2.v2, 2 * x, 2 * y) - v1.v2(i, j)));
            }
        }
    }

    // approximate-law solutions approach the exact-law solution monotonically
    bool monotone = true;
    std::string ladder;
    {
        Grid g = make_grid(128, 5.0);
        RealField th0 = random_symmetric_field(g, SymmetryGroup::rotation(3), 55, 1.0, 0.45 * g.l);
        SolverConfig base;
        base.dt = 2e-3;
        base.t_end = 1.0;
        base.diag_every = 0;
        base.snapshot_every = 100;
        Trajectory exact = run(th0, base);
        const RealField& ref = exact.snapshots.back();
        double prev = 1e99;
        for (double delta : {0.2, 0.1, 0.05}) {
            SolverConfig cfg = base;
            cfg.mollify = MollifyConfig{delta, 8.0};
            Trajectory tr = run_approximate(th0, cfg);
            double err = 0.0;
            for (size_t k = 0; k < ref.values().size(); ++k)
                err = std::max(err, std::abs(tr.snapshots.back().values()[k] - ref.values()[k]));
            ladder += fmt("%.3e ", err);
            if (err >= prev) monotone = false;
            prev = err;
        }
    }
    record(9, "DSS machinery", dss_defect <= 1e-3 && monotone,
           fmt("(mollifier DSS=%.2e thr=1e-3; delta ladder %s%s)", dss_defect, ladder.c_str(),
               monotone ? "monotone" : "NOT monotone"));
}

// --------------------------------------------------------------- criterion 10
void criterion_profile_stability() {
    auto t0 = clk::now();

    SimilarityConfig pcfg;
    pcfg.grid = make_grid(256, 5.0);
    Profile p = solve_profile(sin3(), 0.05, SymmetryGroup::rotation_reflection(3), pcfg);

    bool profile_ok = p.converged && p.residual < 1e-5 * 0.05 && p.reflection_defect < 1e-6;

    // compact perturbation, reflection-odd and 3-fold symmetric
    StabilityConfig scfg;
    scfg.physical_grid = make_grid(256, 12.0);
    scfg.dt = 5e-3;
    scfg.t0 = 0.65;
    scfg.n_checkpoints = 5; // t spans 16x, one decade and change
    RealField pert = RealField::from_function(scfg.physical_grid, [](double x, double y) {
        double r = std::hypot(x, y), phi = std::atan2(y, x);
        double u = r / 0.8;
        return 0.02 * u * u * u * std::exp(-u * u) * std::sin(3.0 * phi) / 1.16;
    });
    StabilityResult res = stability_experiment(p, pert, {0.5, 1.0, 1.6}, scfg);

    // decay ladder at R = 1 (all checkpoints valid): eventually decreasing,
    // final/initial <= 0.3 (regression target frozen after the first
    // validated run)
    size_t r1 = 1;
    bool decay_ok = true;
    double e0 = res.decay[0][r1], efin = res.decay.back()[r1];
    size_t argmax = 0;
    for (size_t k = 0; k < res.times.size(); ++k) {
        if (!res.valid[k][r1]) decay_ok = false;
        if (res.decay[k][r1] > res.decay[argmax][r1]) argmax = k;
    }
    for (size_t k = argmax; k + 1 < res.times.size(); ++k)
        if (res.decay[k + 1][r1] > res.decay[k][r1]) decay_ok = false;
    if (!(efin <= 0.3 * e0)) decay_ok = false;

    double dt = seconds_since(t0);
    bool pass = profile_ok && decay_ok && dt < 900.0;
    record(10, "profile + stability", pass,
           fmt("(res=%.1e thr=5e-7; refl=%.1e thr=1e-6 [rot-gen torus floor %.1e]; "
               "decay %.2e->%.2e ratio=%.2f thr=0.3; exp=%.2f; %.0fs < 900s)",
               p.residual, p.reflection_defect, p.asymmetry_value, e0, efin, efin / e0,
               res.fitted_decay_exponent, dt));
}

// --------------------------------------------------------------- criterion 11
void criterion_sweep() {
    auto t0 = clk::now();
    SimilarityConfig cfg;
    cfg.grid = make_grid(128, 5.0);
    cfg.s_max = 40.0;

    std::vector<double> As;
    const int n_a = 12;
    for (int i = 0; i < n_a; ++i)
        As.push_back(0.1 * std::pow(50.0, static_cast<double>(i) / (n_a - 1)));

    Branch br = sweep_amplitude(sin3(), As, SymmetryGroup::rotation_reflection(3),
                                SymmetryGroup::rotation(3), cfg);

    std::filesystem::create_directories("acceptance_out");
    std::ofstream csv("acceptance_out/branch.csv");
    csv << "A,residual,asymmetry,converged\n";
    for (const auto& e : br.entries)
        csv << fmt("%.17g,%.17g,%.17g,%d\n", e.amplitude, e.residual, e.asym, e.converged ? 1 : 0);
    csv.close();

    bool monotone = true;
    for (size_t i = 1; i < br.entries.size(); ++i)
        if (br.entries[i].amplitude <= br.entries[i - 1].amplitude) monotone = false;

    double small_a_worst = 0.0;
    int small_n = 0;
    for (const auto& e : br.entries)
        if (e.amplitude <= 0.2) {
            small_a_worst = std::max(small_a_worst, e.asym);
            ++small_n;
        }

    double dt = seconds_since(t0);
    bool pass = br.entries.size() == As.size() && monotone && small_n >= 2 &&
                small_a_worst <= 1e-4;
    record(11, "amplitude sweep smoke", pass,
           fmt("(%zu entries; small-A indicator=%.1e thr=1e-4; breaking %s [exploratory]; %.0fs)",
               br.entries.size(), small_a_worst,
               br.breaking_flagged ? "FLAGGED" : "not flagged", dt));
}

// --------------------------------------------------------------- criterion 12
void criterion_determinism() {
    namespace fs = std::filesystem;
    fs::create_directories("acceptance_out");
    auto run_once = [](const std::string& path) {
        Grid g = make_grid(64, 4.0);
        RealField th0 = random_symmetric_field(g, SymmetryGroup::rotation(3), 4242, 1.0, 1.8);
        SolverConfig cfg;
        cfg.dt = 5e-3;
        cfg.t_end = 0.1;
        cfg.diag_every = 2;
        Trajectory tr = run(th0, cfg);
        write_diagnostics_csv(tr, path);
    };
    run_once("acceptance_out/det_a.csv");
    run_once("acceptance_out/det_b.csv");
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    };
    std::string a = slurp("acceptance_out/det_a.csv");
    std::string b = slurp("acceptance_out/det_b.csv");
    record(12, "determinism", !a.empty() && a == b,
           fmt("(%zu bytes, identical=%s)", a.size(), a == b ? "yes" : "NO"));
}

} // namespace

int main() {
    auto t0 = clk::now();
    criterion_operator_exactness();
    criterion_semigroup();
    criterion_radial_reduction();
    criterion_max_principle();
    criterion_gauge();
    criterion_xp_machinery();
    criterion_energy_structure();
    criterion_at_et_budget();
    criterion_dss_machinery();
    criterion_profile_stability();
    criterion_sweep();
    criterion_determinism();

    int failures = 0;
    for (const auto& r : g_results)
        if (!r.pass) ++failures;
    std::printf("\n%zu criteria, %d failures (%.0fs total)\n", g_results.size(), failures,
                seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
