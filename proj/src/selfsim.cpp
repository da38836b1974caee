#include "sqglab/selfsim.hpp"

#include <stdexcept>

#include "sqglab/datasets.hpp"
#include "sqglab/interp.hpp"

namespace sqg {

namespace {

double sponge_sigma(double r, const SimilarityConfig& cfg) {
    const double L = cfg.grid.l;
    double u = (r / L - cfg.sponge_start) / (0.95 - cfg.sponge_start);
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return cfg.sponge_rate;
    return cfg.sponge_rate * u * u * (3.0 - 2.0 * u);
}

struct SimilarityOp {
    SimilarityConfig cfg;
    RealField target;          // A * f(y/|y|), sponge anchor
    RealField sigma;           // sponge rate field
    RealField yc1, yc2;        // clipped drift coordinates

    SimilarityOp(const HomogeneousProfile& f, double A, const SimilarityConfig& c) : cfg(c) {
        const Grid& g = cfg.grid;
        if (cfg.sponge_target) {
            target = *cfg.sponge_target;
        } else {
            target = rasterize(f, g);
            for (auto& v : target.values()) v *= A;
        }
        sigma = RealField(g);
        yc1 = RealField(g);
        yc2 = RealField(g);
        const double clip = cfg.drift_clip * g.l;
        for (int i = 0; i < g.n; ++i) {
            double x = g.x(i);
            for (int j = 0; j < g.n; ++j) {
                double y = g.x(j);
                double r = std::hypot(x, y);
                sigma(i, j) = sponge_sigma(r, cfg);
                double fac = r > clip ? clip / r : 1.0;
                // the coordinate is a sawtooth on the torus: on the seam
                // rows +l and -l identify, and the symmetrized value 0 keeps
                // the drift exactly equivariant under the index symmetries
                yc1(i, j) = (i == 0) ? 0.0 : x * fac;
                yc2(i, j) = (j == 0) ? 0.0 : y * fac;
            }
        }
    }

    // everything except -Lambda(Theta): N = (y - Rperp Theta).grad Theta - sponge
    SpectralField nonlinear(const SpectralField& Th) const {
        const Grid& g = cfg.grid;
        VectorField gr = gradient(Th);
        RealField theta = to_real(Th);

        RealField nl(g);
        if (cfg.disable_velocity) {
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j)
                    nl(i, j) = yc1(i, j) * gr.v1(i, j) + yc2(i, j) * gr.v2(i, j);
        } else {
            VectorField v = riesz_perp(Th);
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j)
                    nl(i, j) = (yc1(i, j) - v.v1(i, j)) * gr.v1(i, j) +
                               (yc2(i, j) - v.v2(i, j)) * gr.v2(i, j);
        }
        SpectralField N = to_spectral(nl);
        dealias_inplace(N);

        // sponge relaxation toward the far-field datum, in physical space
        RealField sp(g);
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                sp(i, j) = -sigma(i, j) * (theta(i, j) - target(i, j));
        SpectralField Sp = to_spectral(sp);
        dealias_inplace(Sp);
        for (size_t k = 0; k < N.data().size(); ++k) N.data()[k] += Sp.data()[k];
        return N;
    }

    RealField full_rhs(const RealField& Theta) const {
        SpectralField Th = to_spectral(Theta);
        dealias_inplace(Th);
        SpectralField N = nonlinear(Th);
        SpectralField L = fractional_laplacian(Th, 1.0);
        for (size_t k = 0; k < N.data().size(); ++k) N.data()[k] -= L.data()[k];
        return to_real(N);
    }
};

} // namespace

RealField similarity_rhs(const RealField& Theta, const HomogeneousProfile& f, double A,
                         const SimilarityConfig& cfg) {
    if (!Theta.all_finite()) throw std::invalid_argument("similarity_rhs: non-finite field");
    if (Theta.grid() != cfg.grid)
        throw std::invalid_argument("similarity_rhs: grid mismatch");
    SimilarityOp op(f, A, cfg);
    return op.full_rhs(Theta);
}

double interior_residual(const RealField& rhs_field, const Grid& g) {
    const double r2 = 0.25 * g.l * g.l; // |y| <= 0.5 L
    double acc = 0.0;
    for (int i = 0; i < g.n; ++i) {
        double x = g.x(i);
        for (int j = 0; j < g.n; ++j) {
            double y = g.x(j);
            if (x * x + y * y <= r2) acc += rhs_field(i, j) * rhs_field(i, j);
        }
    }
    return std::sqrt(acc * g.dx * g.dx);
}

Profile solve_profile(const HomogeneousProfile& f, double A, const SymmetryGroup& G,
                      const SimilarityConfig& cfg, const RealField* guess) {
    if (A < 0.0) throw std::invalid_argument("solve_profile: A must be >= 0");
    const Grid& g = cfg.grid;

    Profile out;
    out.boundary = f;
    out.amplitude = A;
    out.group = G;

    if (A == 0.0 && guess == nullptr) {
        out.theta = RealField(g);
        out.residual = 0.0;
        out.asymmetry_value = 0.0;
        out.converged = true;
        return out;
    }

    SimilarityOp op(f, A, cfg);

    RealField Theta = guess ? *guess : [&] {
        RealField t0 = op.target; // A*f, already origin-mollified by rasterize
        return t0;
    }();

    // advection by the clipped similarity drift is explicit, so the two-stage
    // exponential scheme is needed for stability at |y| ~ L_y; large
    // amplitudes add |Rperp Theta| ~ A to the drift speed
    const double ds = cfg.ds > 0.0 ? cfg.ds : 0.7 / g.n / (1.0 + 0.15 * A);
    const double tol = std::max(cfg.tol_factor * A, cfg.abs_tol);

    std::vector<double> E(static_cast<size_t>(g.size())), F1(E.size()), F2(E.size());
    for (int i = 0; i < g.n; ++i) {
        double k1 = g.kappa(i);
        for (int j = 0; j < g.n; ++j) {
            double k = std::hypot(k1, g.kappa(j));
            size_t idx = static_cast<size_t>(i) * g.n + j;
            double z = -ds * k;
            E[idx] = std::exp(z);
            F1[idx] = ds * (std::abs(z) < 1e-5 ? 1.0 + z / 2.0 + z * z / 6.0
                                               : std::expm1(z) / z);
            F2[idx] = ds * (std::abs(z) < 1e-4 ? 0.5 + z / 6.0 + z * z / 24.0
                                               : (std::expm1(z) - z) / (z * z));
        }
    }

    SpectralField Th = to_spectral(Theta);
    dealias_inplace(Th);

    auto finite = [](const SpectralField& F) {
        for (auto z : F.data())
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    };

    const int nsteps = static_cast<int>(cfg.s_max / ds);
    double res = std::numeric_limits<double>::infinity();
    int s = 0;
    bool blew_up = false;
    try {
        for (s = 1; s <= nsteps; ++s) {
            SpectralField N0 = op.nonlinear(Th);
            SpectralField A1(g);
            for (size_t k = 0; k < Th.data().size(); ++k)
                A1.data()[k] = E[k] * Th.data()[k] + F1[k] * N0.data()[k];
            if (!finite(A1)) {
                blew_up = true;
                break;
            }
            SpectralField N1 = op.nonlinear(A1);
            for (size_t k = 0; k < Th.data().size(); ++k)
                Th.data()[k] = A1.data()[k] + F2[k] * (N1.data()[k] - N0.data()[k]);
            if (!finite(Th)) {
                blew_up = true;
                break;
            }

            if (cfg.resymmetrize_every > 0 && s % cfg.resymmetrize_every == 0) {
                RealField projected = project_symmetric(to_real(Th), G);
                Th = to_spectral(projected);
                dealias_inplace(Th);
            }

            if (s % cfg.check_every == 0 || s == nsteps) {
                RealField theta = to_real(Th);
                res = interior_residual(op.full_rhs(theta), g);
                if (res < tol) break;
            }
        }
    } catch (const std::exception&) {
        // overflow inside a product can surface from the transform guards
        blew_up = true;
    }

    if (blew_up || !finite(Th)) {
        out.theta = RealField(g);
        out.residual = std::numeric_limits<double>::infinity();
        out.converged = false;
        out.s_reached = s * ds;
        return out;
    }

    out.theta = to_real(Th);
    out.residual = res;
    out.asymmetry_value = asymmetry(out.theta, G, 0.55 * g.l);
    out.reflection_defect = reflection_defect(out.theta, 0.55 * g.l);
    out.converged = res < tol;
    out.s_reached = std::min(static_cast<double>(nsteps), static_cast<double>(s)) * ds;
    return out;
}

double reflection_defect(const RealField& theta, double window_radius) {
    const Grid& g = theta.grid();
    RealField t = act(GroupElement{0.0, true}, theta);
    const double scale = std::max(theta.max_abs(), 1e-300);
    const bool windowed = window_radius > 0.0;
    double d = 0.0;
    for (int i = 0; i < g.n; ++i) {
        double x = g.x(i);
        for (int j = 0; j < g.n; ++j) {
            if (windowed && x * x + g.x(j) * g.x(j) > window_radius * window_radius) continue;
            d = std::max(d, std::abs(theta(i, j) - t(i, j)));
        }
    }
    return d / scale;
}

StabilityResult stability_experiment(const Profile& profile, const RealField& perturbation,
                                     const std::vector<double>& R_list,
                                     const StabilityConfig& cfg) {
    const Grid& pg = cfg.physical_grid;
    if (perturbation.grid() != pg)
        throw std::invalid_argument("stability_experiment: perturbation grid mismatch");
    if (perturbation.max_abs() > 0.0 && asymmetry(perturbation, profile.group) > 5e-2)
        throw std::invalid_argument("stability_experiment: perturbation breaks the group");

    // theta0 = A f(x/|x|) + perturbation on the physical grid
    RealField base0 = rasterize(profile.boundary, pg);
    for (auto& v : base0.values()) v *= profile.amplitude;
    RealField theta0 = base0;
    for (size_t i = 0; i < theta0.values().size(); ++i)
        theta0.values()[i] += perturbation.values()[i];

    StabilityResult res;
    res.radii = R_list;
    for (int k = 0; k < cfg.n_checkpoints; ++k)
        res.times.push_back(cfg.t0 * std::ldexp(1.0, k));
    const double t_end = res.times.back();

    SolverConfig scfg;
    scfg.dt = cfg.dt;
    scfg.t_end = t_end;
    scfg.scheme = cfg.scheme;
    scfg.snapshot_every = std::max(1, static_cast<int>(std::llround(cfg.t0 / cfg.dt / 4)));
    scfg.diag_every = 0;
    Trajectory traj = run(theta0, scfg);
    const bool perturbed = perturbation.max_abs() > 0.0;
    Trajectory base = perturbed ? run(base0, scfg) : traj;

    const Grid& sg = profile.theta.grid();
    const double probe_phys = 0.45 * 2.0 * pg.l;
    const double probe_sim = 0.9 * sg.l;

    res.error.assign(res.times.size(), std::vector<double>(R_list.size(), 0.0));
    res.decay.assign(res.times.size(), std::vector<double>(R_list.size(), 0.0));
    res.valid.assign(res.times.size(), std::vector<bool>(R_list.size(), true));

    for (size_t k = 0; k < res.times.size(); ++k) {
        double t = res.times[k];
        const RealField& th = traj.snapshot_at(t);
        const RealField& bs = base.snapshot_at(t);
        for (size_t r = 0; r < R_list.size(); ++r) {
            double R = R_list[r];
            double ball = R * t;
            if (ball > probe_phys || R > probe_sim) {
                res.valid[k][r] = false;
                continue;
            }
            double worst = 0.0, dworst = 0.0;
            for (int i = 0; i < pg.n; ++i) {
                double x = pg.x(i);
                for (int j = 0; j < pg.n; ++j) {
                    double y = pg.x(j);
                    if (x * x + y * y > ball * ball) continue;
                    double ss = interp_bicubic(profile.theta, x / t, y / t);
                    worst = std::max(worst, std::abs(th(i, j) - ss));
                    dworst = std::max(dworst, std::abs(th(i, j) - bs(i, j)));
                }
            }
            res.error[k][r] = worst;
            res.decay[k][r] = perturbed ? dworst : worst;
        }
    }

    // exploratory decay-rate fit at the middle radius
    size_t rmid = R_list.size() / 2;
    std::vector<double> lt, le;
    for (size_t k = 0; k < res.times.size(); ++k) {
        if (res.valid[k][rmid] && res.decay[k][rmid] > 0.0) {
            lt.push_back(std::log(res.times[k]));
            le.push_back(std::log(res.decay[k][rmid]));
        }
    }
    if (lt.size() >= 2) {
        double n = static_cast<double>(lt.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < lt.size(); ++i) {
            sx += lt[i];
            sy += le[i];
            sxx += lt[i] * lt[i];
            sxy += lt[i] * le[i];
        }
        res.fitted_decay_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return res;
}

Branch sweep_amplitude(const HomogeneousProfile& f, const std::vector<double>& A_values,
                       const SymmetryGroup& G, const SymmetryGroup& Gbar,
                       const SimilarityConfig& cfg) {
    for (size_t i = 1; i < A_values.size(); ++i)
        if (A_values[i] <= A_values[i - 1])
            throw std::invalid_argument("sweep_amplitude: A_values must increase");
    if (G.kind != SymmetryGroup::Kind::rotation_reflection ||
        Gbar.kind != SymmetryGroup::Kind::rotation || G.m != Gbar.m)
        throw std::invalid_argument("sweep_amplitude: need Gbar = rotations only, G = rotations + reflection");

    Branch br;
    br.group_constrained = Gbar;
    br.group_reference = G;

    // fixed reflection-antisymmetric, Gbar-symmetric probe: cos(m phi) harmonic
    const Grid& g = cfg.grid;
    RealField probe = RealField::from_function(g, [&](double x, double y) {
        double r = std::hypot(x, y);
        double phi = std::atan2(y, x);
        double u = r / (0.4 * g.l);
        double env = u < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0;
        return std::pow(std::min(u, 1.0), G.m) * env * std::cos(G.m * phi);
    });

    // No class projection: the discrete flow commutes exactly with the
    // reflection, so the reflection-odd content (the breaking indicator)
    // evolves autonomously; projecting would only inject wrap noise.
    std::optional<RealField> prev;
    std::vector<double> small_a_asym;
    for (double A : A_values) {
        RealField guess = prev ? *prev : [&] {
            RealField t0 = rasterize(f, g);
            for (auto& v : t0.values()) v *= A;
            return t0;
        }();
        const double eps = 1e-3 * std::max(A, 1e-6);
        for (size_t i = 0; i < guess.values().size(); ++i)
            guess.values()[i] += eps * probe.values()[i];

        Profile p = solve_profile(f, A, Gbar, cfg, &guess);
        double indicator = reflection_defect(p.theta, 0.55 * g.l);

        br.entries.push_back({A, p.residual, indicator, p.converged});
        if (p.converged) prev = p.theta;
        if (A <= 0.2 && p.converged) small_a_asym.push_back(indicator);
    }

    if (!small_a_asym.empty()) {
        for (double a : small_a_asym) br.small_a_floor = std::max(br.small_a_floor, a);
        double flag_level = 100.0 * std::max(br.small_a_floor, 1e-12);
        int sustained = 0;
        for (const auto& e : br.entries) {
            if (e.converged && e.asym > flag_level)
                ++sustained;
            else
                sustained = 0;
            if (sustained >= 2) {
                br.breaking_flagged = true;
                break;
            }
        }
    }
    return br;
}

} // namespace sqg
