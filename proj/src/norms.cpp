#include "sqglab/norms.hpp"

#include <random>
#include <stdexcept>

namespace sqg {

std::vector<double> ladder_radii(const NormConfig& cfg, const Grid* grid) {
    std::vector<double> out;
    int J = cfg.ladder;
    if (J < 0) {
        if (grid) {
            J = 0;
            while (cfg.r0 * std::ldexp(1.0, J + 1) <= 0.9 * grid->l) ++J;
        } else {
            J = 10;
        }
    }
    for (int j = 0; j <= J; ++j) out.push_back(cfg.r0 * std::ldexp(1.0, j));
    return out;
}

namespace {

double ball_average_p(const RealField& f, double R, double p, double center_shift) {
    const Grid& g = f.grid();
    if (R < g.dx) throw std::invalid_argument("xp_norm: ball radius below grid spacing");
    const double r2 = R * R;
    double s = 0.0;
    long cnt = 0;
    for (int i = 0; i < g.n; ++i) {
        double x = g.x(i);
        for (int j = 0; j < g.n; ++j) {
            double y = g.x(j);
            if (x * x + y * y <= r2) {
                s += std::pow(std::abs(f(i, j) - center_shift), p);
                ++cnt;
            }
        }
    }
    return s / cnt;
}

double ball_mean(const RealField& f, double R) {
    const Grid& g = f.grid();
    const double r2 = R * R;
    double s = 0.0;
    long cnt = 0;
    for (int i = 0; i < g.n; ++i) {
        double x = g.x(i);
        for (int j = 0; j < g.n; ++j) {
            double y = g.x(j);
            if (x * x + y * y <= r2) {
                s += f(i, j);
                ++cnt;
            }
        }
    }
    return s / cnt;
}

double profile_angular_mean_p(const HomogeneousProfile& f, double p, double shift) {
    double s = 0.0;
    for (double v : f.samples()) s += std::pow(std::abs(v - shift), p);
    return s / f.sample_count();
}

} // namespace

std::vector<double> xp_ball_averages(const RealField& f, const NormConfig& cfg) {
    auto radii = ladder_radii(cfg, &f.grid());
    std::vector<double> out;
    out.reserve(radii.size());
    for (double R : radii)
        out.push_back(std::pow(ball_average_p(f, R, cfg.p, 0.0), 1.0 / cfg.p));
    return out;
}

double xp_norm(const RealField& f, const NormConfig& cfg) {
    if (cfg.p < 1.0) throw std::invalid_argument("xp_norm: p must be >= 1");
    double best = 0.0;
    for (double v : xp_ball_averages(f, cfg)) best = std::max(best, v);
    return best;
}

double xp_norm(const HomogeneousProfile& f, const NormConfig& cfg) {
    if (cfg.p < 1.0) throw std::invalid_argument("xp_norm: p must be >= 1");
    // ball averages of a 0-homogeneous function factor into a pure angular
    // mean, independent of the radius
    return std::pow(profile_angular_mean_p(f, cfg.p, 0.0), 1.0 / cfg.p);
}

double xp_osc_norm(const RealField& f, const NormConfig& cfg) {
    if (cfg.p < 1.0) throw std::invalid_argument("xp_osc_norm: p must be >= 1");
    auto radii = ladder_radii(cfg, &f.grid());
    double best = 0.0;
    for (double R : radii) {
        double m = ball_mean(f, R);
        best = std::max(best, std::pow(ball_average_p(f, R, cfg.p, m), 1.0 / cfg.p));
    }
    return best;
}

double xp_osc_norm(const HomogeneousProfile& f, const NormConfig& cfg) {
    double m = 0.0;
    for (double v : f.samples()) m += v;
    m /= f.sample_count();
    return std::pow(profile_angular_mean_p(f, cfg.p, m), 1.0 / cfg.p);
}

double ydot_alpha(const RealField& f, const NormConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw std::invalid_argument("ydot_alpha: alpha must lie in (0,1)");
    const Grid& g = f.grid();
    auto radii = ladder_radii(cfg, &g);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> node(0, g.n - 1);

    double best = 0.0;
    for (double r : radii) {
        const int max_off = std::max(1, static_cast<int>(std::floor(0.5 * r / g.dx)));
        std::uniform_int_distribution<int> off(-max_off, max_off);
        double local = 0.0;
        int accepted = 0, tries = 0;
        while (accepted < cfg.pairs && tries < 20 * cfg.pairs) {
            ++tries;
            int i = node(rng), j = node(rng);
            double x = g.x(i), y = g.x(j);
            if (x * x + y * y <= r * r) continue;
            int di = off(rng), dj = off(rng);
            if (di == 0 && dj == 0) continue;
            int i2 = i + di, j2 = j + dj;
            if (i2 < 0 || i2 >= g.n || j2 < 0 || j2 >= g.n) continue;
            double x2 = g.x(i2), y2 = g.x(j2);
            if (x2 * x2 + y2 * y2 <= r * r) continue;
            double dist = std::hypot(x - x2, y - y2);
            if (dist > 0.5 * r) continue;
            ++accepted;
            local = std::max(local, std::abs(f(i, j) - f(i2, j2)) / std::pow(dist, cfg.alpha));
        }
        best = std::max(best, std::pow(r, cfg.alpha) * local);
    }
    return best;
}

double ydot_alpha(const HomogeneousProfile& f, const NormConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw std::invalid_argument("ydot_alpha: alpha must lie in (0,1)");
    // by 0-homogeneity r^alpha [f]_{C^alpha(|x|>r)} is r-independent; sample
    // pairs outside the unit ball
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> uang(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> ulogr(0.0, std::log(8.0));
    std::uniform_real_distribution<double> uoff(-0.5, 0.5);

    double best = 0.0;
    for (int k = 0; k < cfg.pairs; ++k) {
        double rho = std::exp(ulogr(rng));
        double phi = uang(rng);
        double x = rho * std::cos(phi), y = rho * std::sin(phi);
        double x2 = x + uoff(rng), y2 = y + uoff(rng);
        if (x2 * x2 + y2 * y2 <= 1.0) continue;
        double dist = std::hypot(x - x2, y - y2);
        if (dist == 0.0) continue;
        double d = std::abs(f.eval(x, y) - f.eval(x2, y2));
        best = std::max(best, d / std::pow(dist, cfg.alpha));
    }
    return best;
}

namespace {

double layer_cake_l2weak(const std::vector<double>& mags, double cell_area) {
    double vmax = 0.0;
    for (double v : mags) vmax = std::max(vmax, v);
    if (vmax == 0.0) return 0.0;
    double best = 0.0;
    for (int j = 0; j <= 24; ++j) {
        double lam = vmax * std::ldexp(1.0, -j);
        long cnt = 0;
        for (double v : mags)
            if (v > lam) ++cnt;
        best = std::max(best, lam * std::sqrt(cell_area * cnt));
    }
    return best;
}

} // namespace

YbbRecord ybb_alpha(const RealField& theta0, const NormConfig& cfg) {
    YbbRecord rec;
    rec.linf = theta0.max_abs();
    rec.ydot = ydot_alpha(theta0, cfg);

    SpectralField Th = to_spectral(theta0);
    VectorField r = riesz_perp(Th);
    rec.riesz_linf = r.max_norm();

    VectorField gr = gradient(Th);
    const Grid& g = theta0.grid();
    std::vector<double> mags(static_cast<size_t>(g.size()));
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            mags[static_cast<size_t>(i) * g.n + j] = std::hypot(gr.v1(i, j), gr.v2(i, j));
    rec.grad_l2weak = layer_cake_l2weak(mags, g.dx * g.dx);

    rec.total = rec.linf + rec.ydot + rec.riesz_linf + rec.grad_l2weak;
    return rec;
}

YbbRecord ybb_alpha(const HomogeneousProfile& theta0, const NormConfig& cfg) {
    YbbRecord rec;
    rec.linf = theta0.max_abs();
    rec.ydot = ydot_alpha(theta0, cfg);

    auto r = modified_riesz_profile(theta0, 64);
    for (int k = 0; k < r[0].sample_count(); ++k)
        rec.riesz_linf = std::max(rec.riesz_linf,
                                  std::hypot(r[0].samples()[k], r[1].samples()[k]));

    // |grad f| = |f'(phi)|/|x| for the 0-homogeneous extension; the Lorentz
    // quasinorm collapses to sqrt(int f'^2 dphi / 2)
    double s = 0.0;
    const int n = theta0.sample_count();
    for (int k = 0; k < n; ++k) {
        double d = theta0.eval_angle_derivative(2.0 * M_PI * k / n);
        s += d * d;
    }
    rec.grad_l2weak = std::sqrt(M_PI * s / n);

    rec.total = rec.linf + rec.ydot + rec.riesz_linf + rec.grad_l2weak;
    return rec;
}

double at_norm(const Trajectory& traj, double r0) {
    if (traj.snapshots.empty()) throw std::invalid_argument("at_norm: empty trajectory");
    NormConfig cfg;
    cfg.r0 = r0;
    cfg.p = 2.0;
    double best = 0.0;
    for (const auto& f : traj.snapshots) best = std::max(best, xp_norm(f, cfg));
    return best;
}

double et_norm(const Trajectory& traj, double r0) {
    if (traj.snapshots.size() < 2) throw std::invalid_argument("et_norm: need >= 2 snapshots");
    const Grid& g = traj.grid;
    NormConfig cfg;
    cfg.r0 = r0;
    auto radii = ladder_radii(cfg, &g);

    // per-snapshot ball integrals of |Lambda^{1/2} theta|^2
    const size_t m = traj.snapshots.size();
    std::vector<std::vector<double>> ball(m, std::vector<double>(radii.size(), 0.0));
    for (size_t s = 0; s < m; ++s) {
        RealField half = to_real(fractional_laplacian(to_spectral(traj.snapshots[s]), 0.5));
        for (size_t ri = 0; ri < radii.size(); ++ri) {
            double r2 = radii[ri] * radii[ri];
            double acc = 0.0;
            for (int i = 0; i < g.n; ++i) {
                double x = g.x(i);
                for (int j = 0; j < g.n; ++j) {
                    double y = g.x(j);
                    if (x * x + y * y <= r2) acc += half(i, j) * half(i, j);
                }
            }
            ball[s][ri] = acc * g.dx * g.dx;
        }
    }

    double best = 0.0;
    for (size_t ri = 0; ri < radii.size(); ++ri) {
        double integral = 0.0; // trapezoid in time
        for (size_t s = 0; s + 1 < m; ++s) {
            double dt = traj.times[s + 1] - traj.times[s];
            integral += 0.5 * dt * (ball[s][ri] + ball[s + 1][ri]);
        }
        best = std::max(best, integral / (radii[ri] * radii[ri]));
    }
    return std::sqrt(best);
}

} // namespace sqg
