#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sqglab/datasets.hpp"
#include "sqglab/norms.hpp"

using namespace sqg;

TEST_CASE("xp norm of constants and the profile closed form") {
    Grid g = make_grid(128, 8.0);
    NormConfig cfg;
    CHECK(xp_norm(RealField(g, 0.7), cfg) == doctest::Approx(0.7).epsilon(1e-13));
    CHECK(xp_osc_norm(RealField(g, 0.7), cfg) < 1e-13);

    auto cos3 = HomogeneousProfile::from_function([](double phi) { return std::cos(3.0 * phi); });
    CHECK(xp_norm(cos3, cfg) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

    // independent 2D quadrature oracle for the same ball average
    double acc = 0.0;
    const int nr = 400, na = 512;
    for (int a = 0; a < na; ++a) {
        double phi = 2.0 * M_PI * a / na;
        double c = std::cos(3.0 * phi);
        for (int r = 0; r < nr; ++r) {
            double rr = (r + 0.5) / nr;
            acc += c * c * rr;
        }
    }
    acc *= (1.0 / nr) * (2.0 * M_PI / na) / M_PI; // ball average of |f|^2 on B_1
    CHECK(std::sqrt(acc) == doctest::Approx(xp_norm(cos3, cfg)).epsilon(1e-6));
}

TEST_CASE("profile ball averages are radius independent") {
    auto cos3 = HomogeneousProfile::from_function([](double phi) { return std::cos(3.0 * phi); });

    // per-radius 2D polar quadrature: the radial factor cancels, every radius
    // returns the angular mean
    auto ball_avg = [&](double R) {
        double acc = 0.0;
        const int nr = 300, na = 400;
        for (int a = 0; a < na; ++a) {
            double v = cos3.eval_angle(2.0 * M_PI * a / na);
            for (int r = 0; r < nr; ++r) acc += v * v * (R * (r + 0.5) / nr);
        }
        return std::sqrt(acc * (R / nr) * (2.0 * M_PI / na) / (M_PI * R * R));
    };
    double ref = ball_avg(1.0);
    for (double R : {2.0, 4.0, 64.0, 1024.0})
        CHECK(std::abs(ball_avg(R) - ref) < 1e-6);

    // node-quadrature averages of the rasterized field agree at their own
    // O(dx/R) accuracy
    Grid g = make_grid(256, 16.0);
    RealField f = rasterize(cos3, g);
    NormConfig cfg;
    auto radii = ladder_radii(cfg, &g);
    auto avgs = xp_ball_averages(f, cfg);
    for (size_t i = 0; i < radii.size(); ++i)
        if (radii[i] >= 2.0)
            CHECK(avgs[i] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(5e-3));
}

TEST_CASE("compactly supported data decays like R^{-2/p} along the ladder") {
    Grid g = make_grid(256, 24.0);
    RealField f = compact_bump(g, 0.0, 0.0, 0.9, 1.0);
    NormConfig cfg;
    auto radii = ladder_radii(cfg, &g);
    auto avgs = xp_ball_averages(f, cfg);
    for (size_t i = 1; i < radii.size(); ++i) {
        double slope = std::log(avgs[i] / avgs[i - 1]) / std::log(radii[i] / radii[i - 1]);
        CHECK(std::abs(slope + 2.0 / cfg.p) < 0.05 * (2.0 / cfg.p));
    }
}

TEST_CASE("oscillation norm: means and shifts") {
    Grid g = make_grid(128, 8.0);
    NormConfig cfg;

    // odd field: every ball mean vanishes, so osc equals xp per radius
    RealField odd = RealField::from_function(g, [&](double x, double y) {
        return std::sin(M_PI * x / g.l) * std::cos(M_PI * y / g.l);
    });
    CHECK(xp_osc_norm(odd, cfg) == doctest::Approx(xp_norm(odd, cfg)).epsilon(1e-10));

    // adding a constant leaves the oscillation unchanged
    RealField f = random_smooth_field(g, 3, 1.0);
    RealField fc = f;
    for (auto& v : fc.values()) v += 5.0;
    CHECK(xp_osc_norm(fc, cfg) == doctest::Approx(xp_osc_norm(f, cfg)).epsilon(1e-10));
}

TEST_CASE("norm inequalities on random fields") {
    for (std::uint64_t s : {1ull, 2ull, 3ull, 4ull}) {
        Grid g = make_grid(128, 8.0);
        RealField f = random_smooth_field(g, s, 1.0 + static_cast<double>(s) * 0.3);
        NormConfig cfg;
        double x2 = xp_norm(f, cfg);
        CHECK(x2 <= f.max_abs() + 1e-12);
        CHECK(xp_osc_norm(f, cfg) <= 2.0 * x2 + 1e-12);
        CHECK(x2 <= xp_norm(f, cfg.with_p(4.0)) + 1e-12); // X_{p1} in X_{p2}, p1 >= p2
        CHECK(xp_norm(f, cfg.with_p(1.0)) <= x2 + 1e-12);
    }
    CHECK_THROWS_AS(xp_norm(RealField(make_grid(16, 1.0), 1.0), NormConfig{.p = 0.5}),
                    std::invalid_argument);
}

TEST_CASE("ydot estimator: constants, lipschitz stability, jump growth") {
    NormConfig cfg;
    cfg.alpha = 0.5;

    Grid g = make_grid(64, 8.0);
    CHECK(ydot_alpha(RealField(g, 1.0), cfg) == 0.0);

    auto cos3 = HomogeneousProfile::from_function([](double phi) { return std::cos(3.0 * phi); });
    cfg.pairs = 4096;
    double a = ydot_alpha(cos3, cfg);
    cfg.pairs = 8192;
    double b = ydot_alpha(cos3, cfg);
    CHECK(std::isfinite(a));
    CHECK(a > 0.0);
    CHECK(std::abs(b - a) / a < 0.10); // stable under pair doubling

    // jump on a ray: the estimator grows without bound under refinement
    std::vector<double> s(256);
    for (int k = 0; k < 256; ++k) s[k] = (2.0 * M_PI * k / 256 < M_PI) ? 1.0 : -1.0;
    HomogeneousProfile jump(s);
    cfg.pairs = 2048;
    double j1 = ydot_alpha(jump, cfg);
    cfg.pairs = 32768;
    double j2 = ydot_alpha(jump, cfg);
    CHECK(j2 > 1.5 * j1);

    cfg.alpha = 1.5;
    CHECK_THROWS_AS(ydot_alpha(cos3, cfg), std::invalid_argument);
}

TEST_CASE("ybb record: zero data, linear scaling, weak-L2 bound") {
    Grid g = make_grid(128, 8.0);
    NormConfig cfg;
    cfg.alpha = 0.4;

    YbbRecord z = ybb_alpha(RealField(g), cfg);
    CHECK(z.total == 0.0);

    RealField b = compact_bump(g, 0.5, -0.3, 2.0, 1.0);
    YbbRecord y1 = ybb_alpha(b, cfg);
    RealField b3 = b;
    for (auto& v : b3.values()) v *= 3.0;
    YbbRecord y3 = ybb_alpha(b3, cfg);
    CHECK(y3.total == doctest::Approx(3.0 * y1.total).epsilon(1e-10));
    CHECK(y3.linf == doctest::Approx(3.0 * y1.linf).epsilon(1e-12));
    CHECK(y3.riesz_linf == doctest::Approx(3.0 * y1.riesz_linf).epsilon(1e-10));

    // grid Lorentz quasinorm is dominated by the L2 norm of the gradient
    VectorField gr = gradient(to_spectral(b));
    double l2 = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            l2 += gr.v1(i, j) * gr.v1(i, j) + gr.v2(i, j) * gr.v2(i, j);
    l2 = std::sqrt(l2 * g.dx * g.dx);
    CHECK(y1.grad_l2weak <= l2 + 1e-12);
    CHECK(y1.total == doctest::Approx(y1.linf + y1.ydot + y1.riesz_linf + y1.grad_l2weak));
}

TEST_CASE("ybb for a profile uses the non-decaying riesz transform") {
    auto prof = random_symmetric_profile(SymmetryGroup::rotation(3), 5, 1.0);
    NormConfig cfg;
    cfg.alpha = 0.4;
    cfg.pairs = 2048;
    YbbRecord y = ybb_alpha(prof, cfg);
    CHECK(std::isfinite(y.total));
    CHECK(y.linf == doctest::Approx(prof.max_abs()));
    CHECK(y.riesz_linf > 0.0);
    CHECK(y.grad_l2weak > 0.0);
}

TEST_CASE("at/et norms: constants, poisson decay, linear scaling") {
    Grid g = make_grid(64, 6.0);

    // stationary constant trajectory
    Trajectory tc;
    tc.grid = g;
    for (double t : {0.0, 0.5, 1.0}) {
        tc.times.push_back(t);
        tc.snapshots.push_back(RealField(g, 0.8));
    }
    CHECK(at_norm(tc) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(et_norm(tc) < 1e-12);

    // pure poisson evolution of a bump: at is non-increasing in T
    RealField b = compact_bump(g, 0.0, 0.0, 1.5, 1.0);
    SpectralField B = to_spectral(b);
    Trajectory tp;
    tp.grid = g;
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        tp.times.push_back(t);
        tp.snapshots.push_back(to_real(poisson_semigroup(B, t)));
    }
    NormConfig nc;
    double prev = 1e99;
    for (size_t last = 1; last <= tp.snapshots.size(); ++last) {
        Trajectory pre;
        pre.grid = g;
        pre.times.assign(tp.times.begin(), tp.times.begin() + last);
        pre.snapshots.assign(tp.snapshots.begin(), tp.snapshots.begin() + last);
        double at = at_norm(pre);
        CHECK(at <= prev + 1e-12);
        prev = at;
    }

    // linear scaling of et under data scaling (linear evolution)
    Trajectory tp3 = tp;
    for (auto& f : tp3.snapshots)
        for (auto& v : f.values()) v *= 3.0;
    CHECK(et_norm(tp3) == doctest::Approx(3.0 * et_norm(tp)).epsilon(1e-10));

    Trajectory empty;
    empty.grid = g;
    CHECK_THROWS_AS(at_norm(empty), std::invalid_argument);
}
