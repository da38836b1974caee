#include "sqglab/checks.hpp"

#include <cmath>
#include <stdexcept>

#include "sqglab/datasets.hpp"
#include "sqglab/norms.hpp"
#include "sqglab/selfsim.hpp"

namespace sqg {

namespace {

void push(std::vector<CheckResult>& out, const std::string& suite, const std::string& name,
          double value, double threshold) {
    out.push_back({suite, name, value <= threshold, value, threshold});
}

void spectral_suite(std::vector<CheckResult>& out) {
    const Grid g = make_grid(64, M_PI);
    const std::string s = "spectral";

    RealField f = random_smooth_field(g, 11, 1.0);
    SpectralField F = to_spectral(f);

    // round trip
    RealField back = to_real(F);
    double err = 0.0;
    for (size_t i = 0; i < f.values().size(); ++i)
        err = std::max(err, std::abs(f.values()[i] - back.values()[i]));
    push(out, s, "transform round-trip", err / f.max_abs(), 1e-12);

    push(out, s, "hermitian symmetry", F.hermitian_defect(), 1e-12);

    push(out, s, "parseval",
         std::abs(parseval_physical(f) - parseval_spectral(F)) / parseval_physical(f), 1e-10);

    // single-mode operator symbols
    const double kap = M_PI / g.l;
    RealField mode = RealField::from_function(
        g, [&](double x, double y) { return std::cos(kap * x) * std::cos(2.0 * kap * y); });
    SpectralField M = to_spectral(mode);
    const double mag = std::hypot(kap, 2.0 * kap);

    SpectralField L = fractional_laplacian(M, 1.0);
    RealField lr = to_real(L);
    double worst = 0.0;
    for (size_t i = 0; i < lr.values().size(); ++i)
        worst = std::max(worst, std::abs(lr.values()[i] - mag * mode.values()[i]));
    push(out, s, "half-laplacian symbol", worst / mag, 1e-12);

    SpectralField P = poisson_semigroup(M, 0.7);
    RealField pr = to_real(P);
    worst = 0.0;
    for (size_t i = 0; i < pr.values().size(); ++i)
        worst = std::max(worst, std::abs(pr.values()[i] - std::exp(-0.7 * mag) * mode.values()[i]));
    push(out, s, "poisson symbol", worst, 1e-12);

    // semigroup law
    SpectralField P2 = poisson_semigroup(poisson_semigroup(F, 0.3), 0.5);
    SpectralField P3 = poisson_semigroup(F, 0.8);
    worst = 0.0;
    for (size_t i = 0; i < P2.data().size(); ++i)
        worst = std::max(worst, std::abs(P2.data()[i] - P3.data()[i]));
    push(out, s, "semigroup law", worst, 1e-12);

    // divergence of riesz_perp
    VectorField v = riesz_perp(F);
    VectorField g1 = gradient(to_spectral(v.v1));
    VectorField g2 = gradient(to_spectral(v.v2));
    worst = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            worst = std::max(worst, std::abs(g1.v1(i, j) + g2.v2(i, j)));
    push(out, s, "riesz_perp divergence-free", worst / f.max_abs(), 1e-12);

    // lambda^{1/2} twice = lambda
    SpectralField half = fractional_laplacian(fractional_laplacian(F, 0.5), 0.5);
    SpectralField full = fractional_laplacian(F, 1.0);
    worst = 0.0;
    for (size_t i = 0; i < half.data().size(); ++i)
        worst = std::max(worst, std::abs(half.data()[i] - full.data()[i]));
    push(out, s, "half-symbol composition", worst / f.max_abs(), 1e-12);

    // dealias idempotence
    SpectralField D1 = dealias(F);
    SpectralField D2 = dealias(D1);
    worst = 0.0;
    for (size_t i = 0; i < D1.data().size(); ++i)
        worst = std::max(worst, std::abs(D1.data()[i] - D2.data()[i]));
    push(out, s, "dealias idempotent", worst, 0.0);

    // ju gap: positive ensemble (keeps fractional powers smooth) plus the
    // sign-changing case for the even power
    {
        Grid g4 = make_grid(128, 4.0);
        RealField th = random_symmetric_field(g4, SymmetryGroup::rotation(3), 5, 0.45, 2.0);
        for (auto& v : th.values()) v += 1.0;
        for (double q : {2.0, 3.0, 4.0}) {
            RealField gap = ju_gap(th, q);
            double min_gap = 0.0;
            for (double x : gap.values()) min_gap = std::min(min_gap, x);
            push(out, s, "ju gap q=" + std::to_string(static_cast<int>(q)), -min_gap, 1e-4);
        }
        RealField sc = random_symmetric_field(g4, SymmetryGroup::rotation(3), 6, 1.0, 2.0);
        RealField gap = ju_gap(sc, 4.0);
        double min_gap = 0.0, scale = 0.0;
        for (double x : gap.values()) min_gap = std::min(min_gap, x);
        SpectralField T = to_spectral(sc);
        dealias_inplace(T);
        RealField thd = to_real(T);
        RealField Lt = to_real(fractional_laplacian(T, 1.0));
        for (size_t k = 0; k < thd.values().size(); ++k)
            scale = std::max(scale,
                             std::abs(4.0 * std::pow(thd.values()[k], 3.0) * Lt.values()[k]));
        push(out, s, "ju gap q=4 sign-changing", -min_gap / scale, 1e-4);
    }
}

void symmetry_suite(std::vector<CheckResult>& out) {
    const std::string s = "symmetry";
    const Grid g = make_grid(128, 4.0);

    // action property for grid-exact elements
    RealField f = random_smooth_field(g, 21, 1.0);
    GroupElement r{M_PI / 2.0, false}, refl{0.0, true};
    RealField lhs = act(r, act(refl, f));
    // the composite element is R_{pi/2} S = S R_{-pi/2}
    RealField rhs = act(GroupElement{-M_PI / 2.0, true}, f);
    double worst = 0.0;
    for (size_t i = 0; i < lhs.values().size(); ++i)
        worst = std::max(worst, std::abs(lhs.values()[i] - rhs.values()[i]));
    push(out, s, "action composition (exact elements)", worst, 1e-14);

    // rotation invariance of a gentle radial bump under an interpolated angle
    {
        Grid g5 = make_grid(512, 4.0);
        RealField bump = RealField::from_function(g5, [](double x, double y) {
            double rr = std::hypot(x, y);
            if (rr >= 2.3) return 0.0;
            double c = std::cos(M_PI * rr / 4.6);
            return c * c * c * c;
        });
        RealField rot = act(GroupElement{2.0 * M_PI / 3.0, false}, bump);
        worst = 0.0;
        for (size_t i = 0; i < bump.values().size(); ++i)
            worst = std::max(worst, std::abs(bump.values()[i] - rot.values()[i]));
        push(out, s, "radial bump 2pi/3 rotation", worst, 1e-6);
    }

    // projection idempotence: exact for index-permutation groups, bicubic
    // floor for interpolated angles (fields windowed so rotations are
    // wrap-free)
    RealField windowed = f;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            double rr = std::hypot(g.x(i), g.x(j));
            double c = rr >= 2.2 ? 0.0 : std::pow(std::cos(M_PI * rr / 4.4), 4);
            windowed(i, j) *= c;
        }
    {
        SymmetryGroup G = SymmetryGroup::rotation_reflection(4);
        RealField p1 = project_symmetric(windowed, G);
        RealField p2 = project_symmetric(p1, G);
        worst = 0.0;
        for (size_t i = 0; i < p1.values().size(); ++i)
            worst = std::max(worst, std::abs(p1.values()[i] - p2.values()[i]));
        push(out, s, "projection idempotent", worst / std::max(p1.max_abs(), 1e-12), 1e-8);
        push(out, s, "projected field symmetric", asymmetry(p1, G), 1e-6);
    }
    {
        SymmetryGroup G = SymmetryGroup::rotation_reflection(3);
        RealField p1 = project_symmetric(windowed, G);
        RealField p2 = project_symmetric(p1, G);
        worst = 0.0;
        for (size_t i = 0; i < p1.values().size(); ++i)
            worst = std::max(worst, std::abs(p1.values()[i] - p2.values()[i]));
        push(out, s, "projection idempotent (interp group)",
             worst / std::max(p1.max_abs(), 1e-12), 5e-3);
        push(out, s, "projected field symmetric (interp group)", asymmetry(p1, G, 2.2), 5e-3);
    }

    // gauge: drift means vanish for symmetric data; m in {2,4} and radial are
    // index-exact at any resolution, m=3 needs the wide resolved box
    auto drift_max = [](const Grid& gg, const RealField& th) {
        VectorField v = riesz_perp(to_spectral(th));
        auto radii = drift_radii(gg);
        auto means = mean_drift(v, {radii.begin(), radii.end()});
        double w = 0.0;
        for (auto& mv : means) w = std::max(w, std::hypot(mv[0], mv[1]));
        return w / th.max_abs();
    };
    for (int m : {2, 4}) {
        SymmetryGroup Gm = SymmetryGroup::rotation(m);
        push(out, s, "drift gauge m=" + std::to_string(m),
             drift_max(g, gauge_check_field(g, Gm, 100 + m)), 1e-8);
    }
    push(out, s, "drift gauge radial",
         drift_max(g, gauge_check_field(g, SymmetryGroup::radial(), 200)), 1e-8);
    {
        Grid gw = make_grid(512, 12.0);
        push(out, s, "drift gauge m=3",
             drift_max(gw, gauge_check_field(gw, SymmetryGroup::rotation(3), 103)), 1e-8);
    }
}

void norms_suite(std::vector<CheckResult>& out) {
    const std::string s = "norms";

    auto cos3 = HomogeneousProfile::from_function([](double phi) { return std::cos(3.0 * phi); });
    NormConfig cfg;
    cfg.p = 2.0;
    push(out, s, "X_2 of cos(3phi) = 1/sqrt(2)",
         std::abs(xp_norm(cos3, cfg) - 1.0 / std::sqrt(2.0)), 1e-10);

    const Grid g = make_grid(128, 8.0);
    RealField f = random_smooth_field(g, 31, 2.0);

    // |f|_{X_p} <= |f|_inf
    double xp = xp_norm(f, cfg);
    push(out, s, "xp below sup norm", xp - f.max_abs(), 0.0);
    // oscillation bound
    push(out, s, "osc below 2 xp", xp_osc_norm(f, cfg) - 2.0 * xp, 0.0);
    // monotonicity in p
    push(out, s, "X_4 dominates X_2", xp - xp_norm(f, cfg.with_p(4.0)), 0.0);

    // constant field
    RealField c(g, 0.7);
    push(out, s, "xp of constant", std::abs(xp_norm(c, cfg) - 0.7), 1e-12);
    push(out, s, "osc of constant", xp_osc_norm(c, cfg), 1e-12);

    // ybb scales linearly in amplitude
    NormConfig ycfg;
    ycfg.alpha = 0.4;
    RealField b = compact_bump(g, 0.5, -0.3, 2.0, 1.0);
    YbbRecord y1 = ybb_alpha(b, ycfg);
    RealField b3 = b;
    for (auto& v : b3.values()) v *= 3.0;
    YbbRecord y3 = ybb_alpha(b3, ycfg);
    push(out, s, "ybb homogeneity", std::abs(y3.total - 3.0 * y1.total) / y3.total, 1e-10);
}

void evolve_suite(std::vector<CheckResult>& out) {
    const std::string s = "evolve";
    const Grid g = make_grid(64, 4.0);

    // constant data stays constant
    RealField c(g, 0.4);
    SolverConfig cfg;
    cfg.dt = 5e-3;
    cfg.t_end = 0.1;
    cfg.snapshot_every = 10;
    Trajectory tc = run(c, cfg);
    double drift = 0.0;
    for (double v : tc.snapshots.back().values()) drift = std::max(drift, std::abs(v - 0.4));
    push(out, s, "constant data invariant", drift, 1e-13);

    // max principle + energy decay on symmetric smooth data; the symmetry
    // preservation claim is for a grid-exact group
    RealField th = random_symmetric_field(g, SymmetryGroup::rotation(4), 77, 1.0, 0.5 * g.l);
    cfg.t_end = 0.2;
    cfg.group = SymmetryGroup::rotation(4);
    Trajectory tr = run(th, cfg);
    double margin = 0.0, res = 0.0, energy_up = 0.0, last_e = tr.diagnostics.front().energy;
    for (const auto& d : tr.diagnostics) {
        margin = std::max(margin, d.max_principle_margin);
        res = std::max(res, d.energy_residual);
        if (d.step > 0) energy_up = std::max(energy_up, d.energy - last_e);
        last_e = d.energy;
    }
    push(out, s, "max principle margin", margin, 1e-6);
    push(out, s, "energy identity residual", res, 1e-4);
    push(out, s, "energy monotone", energy_up, 1e-12);
    push(out, s, "symmetry preserved", tr.diagnostics.back().asymmetry, 1e-6);

    // mean conservation (spectral zero mode)
    double mean0 = 0.0, mean1 = 0.0;
    for (double v : tr.snapshots.front().values()) mean0 += v;
    for (double v : tr.snapshots.back().values()) mean1 += v;
    push(out, s, "mean conservation",
         std::abs(mean1 - mean0) / (g.n * static_cast<double>(g.n)), 1e-12);
}

} // namespace

std::vector<std::string> check_suite_names() {
    return {"spectral", "symmetry", "norms", "evolve"};
}

std::vector<CheckResult> run_check_suite(const std::string& suite) {
    std::vector<CheckResult> out;
    bool all = suite == "all";
    bool known = all;
    if (all || suite == "spectral") { spectral_suite(out); known = true; }
    if (all || suite == "symmetry") { symmetry_suite(out); known = true; }
    if (all || suite == "norms") { norms_suite(out); known = true; }
    if (all || suite == "evolve") { evolve_suite(out); known = true; }
    if (!known) throw std::invalid_argument("unknown check suite: " + suite);
    return out;
}

} // namespace sqg
