#include "sqglab/evolve.hpp"

#include <cfloat>
#include <stdexcept>

#include "sqglab/interp.hpp"

namespace sqg {

namespace {

// phi1(z) = (e^z - 1)/z, phi2(z) = (e^z - 1 - z)/z^2, stable near 0
double phi1(double z) {
    if (std::abs(z) < 1e-5) return 1.0 + z / 2.0 + z * z / 6.0;
    return std::expm1(z) / z;
}
double phi2(double z) {
    if (std::abs(z) < 1e-4) return 0.5 + z / 6.0 + z * z / 24.0;
    return (std::expm1(z) - z) / (z * z);
}

struct EtdTables {
    std::vector<double> E, f1, f2; // e^{-dt k}, dt phi1(-dt k), dt phi2(-dt k)
    Grid grid;
    double dt = 0.0;

    void build(const Grid& g, double dt_) {
        grid = g;
        dt = dt_;
        const int n = g.n;
        E.resize(static_cast<size_t>(n) * n);
        f1.resize(E.size());
        f2.resize(E.size());
        for (int i = 0; i < n; ++i) {
            double k1 = g.kappa(i);
            for (int j = 0; j < n; ++j) {
                double k = std::hypot(k1, g.kappa(j));
                size_t idx = static_cast<size_t>(i) * n + j;
                E[idx] = std::exp(-dt * k);
                f1[idx] = dt * phi1(-dt * k);
                f2[idx] = dt * phi2(-dt * k);
            }
        }
    }
};

// N(theta) = -dealias(Rperp(theta) . grad(theta)); also reports max |v|.
SpectralField nonlinear_term(const SpectralField& Th, double* vmax_out) {
    VectorField v = riesz_perp(Th);
    VectorField gr = gradient(Th);
    const Grid& g = Th.grid();

    RealField nl(g);
    double vmax = 0.0;
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) {
            vmax = std::max(vmax, std::hypot(v.v1(i, j), v.v2(i, j)));
            nl(i, j) = -(v.v1(i, j) * gr.v1(i, j) + v.v2(i, j) * gr.v2(i, j));
        }
    }
    if (vmax_out) *vmax_out = vmax;
    SpectralField N = to_spectral(nl);
    dealias_inplace(N);
    return N;
}

// Advection against a frozen drift (approximate constitutive law).
SpectralField advection_term(const SpectralField& Th, const VectorField& v) {
    VectorField gr = gradient(Th);
    const Grid& g = Th.grid();
    RealField nl(g);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            nl(i, j) = -(v.v1(i, j) * gr.v1(i, j) + v.v2(i, j) * gr.v2(i, j));
    SpectralField N = to_spectral(nl);
    dealias_inplace(N);
    return N;
}

void etd_advance(SpectralField& Th, const EtdTables& tab, Scheme scheme,
                 const std::function<SpectralField(const SpectralField&)>& rhs) {
    const size_t m = Th.data().size();
    SpectralField N0 = rhs(Th);

    SpectralField A(Th.grid());
    for (size_t i = 0; i < m; ++i)
        A.data()[i] = tab.E[i] * Th.data()[i] + tab.f1[i] * N0.data()[i];

    if (scheme == Scheme::etd1) {
        Th = std::move(A);
        return;
    }
    SpectralField N1 = rhs(A);
    for (size_t i = 0; i < m; ++i)
        Th.data()[i] = A.data()[i] + tab.f2[i] * (N1.data()[i] - N0.data()[i]);
}

double energy_of(const SpectralField& Th) {
    // (1/2) int theta^2 dx = (1/2)(2l)^2 sum |coeff|^2
    return 0.5 * parseval_spectral(Th);
}

double dissipation_of(const SpectralField& Th) {
    // int |Lambda^{1/2} theta|^2 dx = (2l)^2 sum |kappa| |coeff|^2
    const Grid& g = Th.grid();
    double s = 0.0;
    for (int i = 0; i < g.n; ++i) {
        double k1 = g.kappa(i);
        for (int j = 0; j < g.n; ++j)
            s += std::hypot(k1, g.kappa(j)) * std::norm(Th.at(i, j));
    }
    return s * 4.0 * g.l * g.l;
}

double hessian_sup(const SpectralField& Th) {
    const Grid& g = Th.grid();
    const int nyq = g.n / 2;
    double best = 0.0;
    SpectralField d(g);
    for (int a = 0; a < 3; ++a) { // (1,1), (1,2), (2,2)
        for (int i = 0; i < g.n; ++i) {
            double k1 = g.kappa(i);
            for (int j = 0; j < g.n; ++j) {
                double k2 = g.kappa(j);
                double mult = (a == 0) ? -k1 * k1 : (a == 1) ? -k1 * k2 : -k2 * k2;
                bool nyquist_odd = (a == 1) && (i == nyq || j == nyq);
                d.at(i, j) = nyquist_odd ? 0.0 : mult * Th.at(i, j);
            }
        }
        best = std::max(best, to_real(d).max_abs());
    }
    return best;
}

struct RunState {
    SolverConfig cfg;
    Grid grid;
    EtdTables tab;
    SpectralField Th0;     // initial data, for the psi diagnostic
    double linf0 = 0.0;
    Trajectory traj;
    double prev_energy = 0.0;
    double prev_dissipation = 0.0;
    double residual_since_diag = 0.0; // max per-step energy residual
};

// per-step energy bookkeeping; the diagnostic row reports the worst
// single-step identity violation since the previous row
void track_energy(RunState& st, const SpectralField& Th) {
    double e = energy_of(Th);
    double d = dissipation_of(Th);
    double de = e - st.prev_energy;
    double dmid = 0.5 * (d + st.prev_dissipation);
    double res = std::abs(de + st.cfg.dt * dmid) / std::max(st.prev_energy, DBL_MIN);
    st.residual_since_diag = std::max(st.residual_since_diag, res);
    st.prev_energy = e;
    st.prev_dissipation = d;
}

void record_diagnostics(RunState& st, int stepno, double t, const SpectralField& Th,
                        double vmax) {
    const Grid& g = st.grid;
    StepDiagnostics d;
    d.step = stepno;
    d.t = t;

    RealField theta = to_real(Th);
    d.linf = theta.max_abs();
    d.max_principle_margin = d.linf - st.linf0;
    d.energy = energy_of(Th);
    d.dissipation = dissipation_of(Th);
    if (stepno > 0) d.energy_residual = st.residual_since_diag;
    st.residual_since_diag = 0.0;
    d.cfl = vmax * st.cfg.dt / g.dx;

    VectorField gr = gradient(Th);
    double gmax = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            gmax = std::max(gmax, std::hypot(gr.v1(i, j), gr.v2(i, j)));
    d.grad_linf = gmax;
    d.t_grad_linf = t * gmax;
    d.t2_hess_linf = t * t * hessian_sup(Th);

    auto radii = drift_radii(g);
    VectorField v = riesz_perp(Th);
    auto means = mean_drift(v, {radii.begin(), radii.end()});
    for (int r = 0; r < 4; ++r) d.mean_drift[r] = std::hypot(means[r][0], means[r][1]);

    if (t > 0.0) {
        SpectralField lin = poisson_semigroup(st.Th0, t);
        RealField psi(g);
        RealField linr = to_real(lin);
        double s4 = 0.0;
        const double pr2 = 0.81 * g.l * g.l;
        for (int i = 0; i < g.n; ++i) {
            double x = g.x(i);
            for (int j = 0; j < g.n; ++j) {
                double y = g.x(j);
                if (x * x + y * y <= pr2) {
                    double p = theta(i, j) - linr(i, j);
                    s4 += p * p * p * p;
                }
            }
        }
        d.psi_p4 = std::pow(t, -0.5) * std::pow(s4 * g.dx * g.dx, 0.25);
    }

    if (st.cfg.group) d.asymmetry = asymmetry(theta, *st.cfg.group);

    if (d.cfl > 1.0) st.traj.cfl_exceeded = true;
    st.traj.diagnostics.push_back(d);
}

void maybe_snapshot(RunState& st, int stepno, double t, const SpectralField& Th, int last_step) {
    if (stepno == 0 || stepno == last_step ||
        (st.cfg.snapshot_every > 0 && stepno % st.cfg.snapshot_every == 0)) {
        st.traj.times.push_back(t);
        st.traj.snapshots.push_back(to_real(Th));
    }
}

// Smooth radial cutoff: 1 on |x| <= s, 0 on |x| >= 2s.
double cutoff_value(double r, double s) {
    if (r <= s) return 1.0;
    if (r >= 2.0 * s) return 0.0;
    auto h = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
    double u = r / s - 1.0; // in (0,1)
    return h(1.0 - u) / (h(1.0 - u) + h(u));
}

// Spatial mollifier bump (1-|z|^2)^4 sampled on the grid at scale eps and
// discretely normalized, returned as multiplier coefficients (2l)^2 g_hat.
SpectralField mollifier_multiplier(const Grid& g, double eps) {
    RealField ker(g);
    double sum = 0.0;
    for (int i = 0; i < g.n; ++i) {
        double x = g.x(i);
        for (int j = 0; j < g.n; ++j) {
            double r2 = (x * x + g.x(j) * g.x(j)) / (eps * eps);
            if (r2 < 1.0) {
                double w = 1.0 - r2;
                double v = w * w * w * w;
                ker(i, j) = v;
                sum += v;
            }
        }
    }
    if (sum == 0.0) { // scale below grid: delta kernel
        ker(0, 0) = 1.0;
        sum = 1.0;
    }
    for (auto& v : ker.values()) v /= (sum * g.dx * g.dx);
    SpectralField K = to_spectral(ker);
    const double area = 4.0 * g.l * g.l;
    for (auto& z : K.data()) z *= area;
    return K;
}

double time_kernel(double u) { // (1-u^2)^4 on (-1,1)
    double w = 1.0 - u * u;
    return w > 0.0 ? w * w * w * w : 0.0;
}

VectorField drift_from_history(const std::deque<std::pair<double, RealField>>& hist,
                               double t, double delta, double rho, const RealField& now) {
    const Grid& g = now.grid();
    const double scale = t * delta;

    // temporal mollification over available (past) history, renormalized;
    // with no usable window fall back to the instantaneous field
    RealField b(g);
    double wsum = 0.0;
    for (const auto& [s, f] : hist) {
        if (s < t - scale || s > t) continue;
        double w = time_kernel((t - s) / scale);
        if (w <= 0.0) continue;
        wsum += w;
        const auto& fv = f.values();
        auto& bv = b.values();
        for (size_t i = 0; i < bv.size(); ++i) bv[i] += w * fv[i];
    }
    if (wsum > 0.0) {
        for (auto& v : b.values()) v /= wsum;
    } else {
        b = now;
    }

    // spatial mollification at scale t*delta
    if (scale > g.dx) {
        SpectralField B = to_spectral(b);
        SpectralField K = mollifier_multiplier(g, scale);
        for (size_t i = 0; i < B.data().size(); ++i) B.data()[i] *= K.data()[i].real();
        b = to_real(B);
    }

    // cutoff at rho*t, then the gauge-fixed Riesz transform
    const double s = rho * t;
    if (2.0 * s < 1.5 * g.l) {
        for (int i = 0; i < g.n; ++i) {
            double x = g.x(i);
            for (int j = 0; j < g.n; ++j)
                b(i, j) *= cutoff_value(std::hypot(x, g.x(j)), s);
        }
    }
    SpectralField B = to_spectral(b);
    dealias_inplace(B);
    return riesz_perp(B);
}

} // namespace

std::array<double, 4> drift_radii(const Grid& g) {
    return {0.3 * g.l, 0.45 * g.l, 0.6 * g.l, 0.75 * g.l};
}

const RealField& Trajectory::snapshot_at(double t) const {
    if (snapshots.empty()) throw std::runtime_error("Trajectory: no snapshots");
    size_t best = 0;
    for (size_t i = 1; i < times.size(); ++i)
        if (std::abs(times[i] - t) < std::abs(times[best] - t)) best = i;
    return snapshots[best];
}

namespace {
double symmetry_pre_tolerance(const SymmetryGroup& G);
}

RealField step(const RealField& theta, const SolverConfig& cfg) {
    if (!theta.all_finite()) throw std::invalid_argument("step: non-finite field");
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    if (cfg.group && asymmetry(theta, *cfg.group) > symmetry_pre_tolerance(*cfg.group))
        throw std::invalid_argument("step: field is not symmetric under cfg.group");

    EtdTables tab;
    tab.build(theta.grid(), cfg.dt);
    SpectralField Th = to_spectral(theta);
    dealias_inplace(Th);
    etd_advance(Th, tab, cfg.scheme,
                [](const SpectralField& T) { return nonlinear_term(T, nullptr); });
    return to_real(Th);
}

namespace {

// grid-exact groups are measured by index permutations; interpolated angles
// carry a bicubic measurement floor (resolution dependent), so their
// pre-check is only a sanity gate against grossly asymmetric data
double symmetry_pre_tolerance(const SymmetryGroup& G) {
    bool exact = G.kind != SymmetryGroup::Kind::radial && (G.m == 2 || G.m == 4);
    return exact ? 1e-6 : 5e-2;
}

Trajectory run_impl(const RealField& theta0, const SolverConfig& cfg, bool approximate) {
    if (!theta0.all_finite()) throw std::invalid_argument("run: non-finite initial data");
    if (!(cfg.dt > 0.0 && cfg.t_end > 0.0))
        throw std::invalid_argument("run: dt and t_end must be positive");
    if (cfg.group && asymmetry(theta0, *cfg.group) > symmetry_pre_tolerance(*cfg.group))
        throw std::invalid_argument("run: initial data is not symmetric under cfg.group");
    if (approximate && !cfg.mollify)
        throw std::invalid_argument("run_approximate: cfg.mollify must be set");

    RunState st;
    st.cfg = cfg;
    st.grid = theta0.grid();
    st.tab.build(st.grid, cfg.dt);
    st.linf0 = theta0.max_abs();

    SpectralField Th = to_spectral(theta0);
    dealias_inplace(Th);
    st.Th0 = Th;

    st.traj.grid = st.grid;
    st.traj.initial_linf = st.linf0;
    st.prev_energy = energy_of(Th);
    st.prev_dissipation = dissipation_of(Th);

    const int nsteps = std::max(1, static_cast<int>(std::llround(cfg.t_end / cfg.dt)));

    // history buffer for the mollified constitutive law
    std::deque<std::pair<double, RealField>> hist;
    const double delta = approximate ? cfg.mollify->delta : 0.0;
    const double rho = approximate ? cfg.mollify->rho : 0.0;
    if (approximate) {
        if (!(delta > 0.0 && delta <= 1.0 && rho >= 1.0))
            throw std::invalid_argument("run_approximate: need delta in (0,1], rho >= 1");
        hist.emplace_back(0.0, to_real(Th));
    }

    double vmax_last = 0.0;
    record_diagnostics(st, 0, 0.0, Th, 0.0);
    maybe_snapshot(st, 0, 0.0, Th, nsteps);

    for (int s = 1; s <= nsteps; ++s) {
        const double t_prev = (s - 1) * cfg.dt;

        if (approximate) {
            VectorField v = drift_from_history(hist, t_prev, delta, rho, to_real(Th));
            double vm = v.max_norm();
            vmax_last = vm;
            etd_advance(Th, st.tab, cfg.scheme,
                        [&v](const SpectralField& T) { return advection_term(T, v); });
        } else {
            double vm = 0.0;
            etd_advance(Th, st.tab, cfg.scheme, [&vm](const SpectralField& T) {
                double m = 0.0;
                SpectralField N = nonlinear_term(T, &m);
                vm = std::max(vm, m);
                return N;
            });
            vmax_last = vm;
        }

        const double t = s * cfg.dt;

        for (auto z : Th.data())
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw std::runtime_error("run: solution blew up (NaN) at step " +
                                         std::to_string(s));

        if (cfg.resymmetrize_every > 0 && cfg.group && s % cfg.resymmetrize_every == 0) {
            RealField projected = project_symmetric(to_real(Th), *cfg.group);
            Th = to_spectral(projected);
            dealias_inplace(Th);
        }

        track_energy(st, Th);

        if (approximate) {
            hist.emplace_back(t, to_real(Th));
            // keep only what the widest future window [t(1-delta), t] can need
            while (hist.size() > 2 && hist.front().first < t * (1.0 - delta) - 2.0 * cfg.dt)
                hist.pop_front();
        }

        if (cfg.diag_every > 0 && (s % cfg.diag_every == 0 || s == nsteps))
            record_diagnostics(st, s, t, Th, vmax_last);
        maybe_snapshot(st, s, t, Th, nsteps);
    }

    return st.traj;
}

} // namespace

Trajectory run(const RealField& theta0, const SolverConfig& cfg) {
    return run_impl(theta0, cfg, false);
}

Trajectory run_approximate(const RealField& theta0, const SolverConfig& cfg) {
    return run_impl(theta0, cfg, true);
}

VectorField mollified_drift(const Trajectory& b_traj, double delta, double rho, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("mollified_drift: t must be positive");
    if (!(delta > 0.0 && delta <= 1.0 && rho >= 1.0))
        throw std::invalid_argument("mollified_drift: need delta in (0,1], rho >= 1");
    if (b_traj.snapshots.empty()) throw std::invalid_argument("mollified_drift: empty trajectory");

    const double lo = t * (1.0 - delta), hi = t * (1.0 + delta);
    if (b_traj.times.front() > lo || b_traj.times.back() < hi)
        throw std::invalid_argument("mollified_drift: trajectory does not cover the window");

    const Grid& g = b_traj.grid;
    const double scale = t * delta;

    RealField b(g);
    double wsum = 0.0;
    for (size_t s = 0; s < b_traj.times.size(); ++s) {
        double ts = b_traj.times[s];
        if (ts < lo || ts > hi) continue;
        double w = time_kernel((t - ts) / scale);
        if (w <= 0.0 && ts != t) continue;
        wsum += w;
        const auto& fv = b_traj.snapshots[s].values();
        auto& bv = b.values();
        for (size_t i = 0; i < bv.size(); ++i) bv[i] += w * fv[i];
    }
    if (wsum <= 0.0) {
        b = b_traj.snapshot_at(t);
    } else {
        for (auto& v : b.values()) v /= wsum;
    }

    if (scale > g.dx) {
        SpectralField B = to_spectral(b);
        SpectralField K = mollifier_multiplier(g, scale);
        for (size_t i = 0; i < B.data().size(); ++i) B.data()[i] *= K.data()[i].real();
        b = to_real(B);
    }

    const double s = rho * t;
    if (2.0 * s < 1.5 * g.l) {
        for (int i = 0; i < g.n; ++i) {
            double x = g.x(i);
            for (int j = 0; j < g.n; ++j)
                b(i, j) *= cutoff_value(std::hypot(x, g.x(j)), s);
        }
    }
    SpectralField B = to_spectral(b);
    dealias_inplace(B);
    return riesz_perp(B);
}

std::vector<std::pair<double, double>> psi_diagnostic(const Trajectory& traj,
                                                      const RealField& theta0, double p) {
    if (!(p > 2.0)) throw std::invalid_argument("psi_diagnostic: p must exceed 2");
    const Grid& g = traj.grid;
    SpectralField Th0 = to_spectral(theta0);
    dealias_inplace(Th0);

    std::vector<std::pair<double, double>> out;
    const double pr2 = 0.81 * g.l * g.l;
    for (size_t s = 0; s < traj.times.size(); ++s) {
        double t = traj.times[s];
        if (t <= 0.0) {
            out.emplace_back(t, 0.0);
            continue;
        }
        RealField lin = to_real(poisson_semigroup(Th0, t));
        double acc = 0.0;
        for (int i = 0; i < g.n; ++i) {
            double x = g.x(i);
            for (int j = 0; j < g.n; ++j) {
                double y = g.x(j);
                if (x * x + y * y <= pr2)
                    acc += std::pow(std::abs(traj.snapshots[s](i, j) - lin(i, j)), p);
            }
        }
        double lp = std::pow(acc * g.dx * g.dx, 1.0 / p);
        out.emplace_back(t, std::pow(t, -2.0 / p) * lp);
    }
    return out;
}

double dss_error(const Trajectory& traj, double lambda) {
    if (!(lambda > 1.0)) throw std::invalid_argument("dss_error: lambda must exceed 1");
    if (traj.times.size() < 2) throw std::invalid_argument("dss_error: too few snapshots");

    const Grid& g = traj.grid;
    const double t_hi = traj.times.back();
    const double t_lo_min = traj.times.front() > 0.0 ? traj.times.front()
                                                     : traj.times[1];
    const double t = t_hi / lambda;
    if (t < t_lo_min) throw std::invalid_argument("dss_error: trajectory span below lambda");

    auto interp_time = [&](double tt) {
        size_t hi = 1;
        while (hi < traj.times.size() && traj.times[hi] < tt) ++hi;
        if (hi >= traj.times.size()) return traj.snapshots.back();
        size_t lo = hi - 1;
        double w = (tt - traj.times[lo]) / (traj.times[hi] - traj.times[lo]);
        RealField out(g);
        const auto& a = traj.snapshots[lo].values();
        const auto& b = traj.snapshots[hi].values();
        auto& o = out.values();
        for (size_t i = 0; i < o.size(); ++i) o[i] = (1.0 - w) * a[i] + w * b[i];
        return out;
    };

    RealField f_t = interp_time(t);
    RealField f_lt = interp_time(lambda * t);

    const double probe = 0.45 * 2.0 * g.l / lambda;
    double worst = 0.0;
    for (int i = 0; i < g.n; ++i) {
        double x = g.x(i);
        for (int j = 0; j < g.n; ++j) {
            double y = g.x(j);
            if (x * x + y * y > probe * probe) continue;
            double a = interp_bicubic(f_lt, lambda * x, lambda * y);
            worst = std::max(worst, std::abs(a - f_t(i, j)));
        }
    }
    return worst;
}

} // namespace sqg
