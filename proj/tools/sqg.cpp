// sqg: command-line front end for the SQG laboratory.
// Subcommands: simulate | profile | sweep | stability | check | norms.
// Exit codes: 0 ok, 2 config error, 3 numerical failure, 4 property-suite failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqglab/checks.hpp"
#include "sqglab/config.hpp"
#include "sqglab/datasets.hpp"
#include "sqglab/selfsim.hpp"
#include "sqglab/snapshot.hpp"

namespace {

using nlohmann::json;

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    std::string suite = "all";
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

sqg::RunConfig load(const CliOptions& opt) {
    sqg::RunConfig cfg;
    if (!opt.config_path.empty()) cfg = sqg::load_config_file(opt.config_path);
    if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
    if (opt.seed) cfg.seed = opt.seed; // CLI overrides config
    if (opt.quiet) cfg.quiet = true;
    return cfg;
}

sqg::SymmetryGroup group_of(const sqg::RunConfig& cfg) {
    return cfg.data_reflection ? sqg::SymmetryGroup::rotation_reflection(cfg.data_m)
                               : sqg::SymmetryGroup::rotation(cfg.data_m);
}

sqg::RealField build_data(const sqg::RunConfig& cfg, const sqg::Grid& g) {
    if (cfg.data_kind == "homogeneous") {
        auto f = sqg::HomogeneousProfile::from_function(
            [&cfg](double phi) { return std::cos(cfg.data_m * phi); });
        sqg::RealField out = sqg::rasterize(f, g);
        for (auto& v : out.values()) v *= cfg.data_amplitude;
        return out;
    }
    if (cfg.data_kind == "bump")
        return sqg::ring_bump(g, 0.25 * g.l, 0.12 * g.l, cfg.data_amplitude);
    if (cfg.data_kind == "random_symmetric")
        return sqg::random_symmetric_field(g, group_of(cfg), *cfg.seed, cfg.data_amplitude,
                                           0.4 * g.l);
    if (cfg.data_kind == "file") return sqg::read_snapshot(cfg.data_file).field;
    throw std::runtime_error("unknown data kind " + cfg.data_kind);
}

void emit_failures_json(const std::vector<std::string>& failures) {
    json j = json::array();
    for (const auto& f : failures) j.push_back(f);
    std::cout << j.dump() << "\n";
}

int cmd_simulate(const CliOptions& opt) {
    sqg::RunConfig cfg = load(opt);
    std::filesystem::create_directories(cfg.out_dir);

    sqg::Grid g = sqg::make_grid(cfg.grid_n, cfg.grid_l);
    sqg::RealField theta0 = build_data(cfg, g);

    sqg::SolverConfig scfg;
    scfg.dt = cfg.dt;
    scfg.t_end = cfg.t_end;
    scfg.scheme = cfg.scheme == "etd1" ? sqg::Scheme::etd1 : sqg::Scheme::etd2;
    scfg.resymmetrize_every = cfg.resymmetrize_every;
    scfg.snapshot_every = cfg.snapshot_every;
    scfg.diag_every = cfg.diag_every;
    if (cfg.data_kind != "file" && cfg.data_kind != "bump") scfg.group = group_of(cfg);
    if (cfg.mollify_delta) scfg.mollify = sqg::MollifyConfig{*cfg.mollify_delta, cfg.mollify_rho};

    sqg::Trajectory traj = scfg.mollify ? sqg::run_approximate(theta0, scfg)
                                        : sqg::run(theta0, scfg);

    sqg::write_diagnostics_csv(traj, cfg.out_dir + "/diagnostics.csv");
    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "/snapshot_%04zu.sqgf", i);
        sqg::write_snapshot(traj.snapshots[i], traj.times[i], cfg.out_dir + name);
    }
    if (!cfg.quiet)
        std::cout << "simulate: " << traj.diagnostics.size() << " diagnostic rows, "
                  << traj.snapshots.size() << " snapshots -> " << cfg.out_dir << "\n";
    if (traj.cfl_exceeded) std::cerr << "warning: CFL exceeded 1 during the run\n";
    return 0;
}

int cmd_profile(const CliOptions& opt) {
    sqg::RunConfig cfg = load(opt);
    std::filesystem::create_directories(cfg.out_dir);

    auto f = sqg::HomogeneousProfile::from_function(
        [&cfg](double phi) { return std::cos(cfg.data_m * phi); });
    sqg::SymmetryGroup G = group_of(cfg);

    sqg::SimilarityConfig scfg;
    scfg.grid = sqg::make_grid(cfg.sim_n, cfg.sim_l);
    scfg.s_max = cfg.sim_s_max;
    scfg.tol_factor = cfg.sim_tol_factor;
    scfg.sponge_rate = cfg.sponge_rate;

    sqg::Profile p = sqg::solve_profile(f, cfg.data_amplitude, G, scfg);
    sqg::write_snapshot(p.theta, 0.0, cfg.out_dir + "/profile.sqgf");

    std::ofstream meta(cfg.out_dir + "/profile.csv");
    meta << "A,residual,asymmetry,converged,s_reached\n";
    meta << p.amplitude << ',' << p.residual << ',' << p.asymmetry_value << ','
         << (p.converged ? 1 : 0) << ',' << p.s_reached << "\n";

    if (!cfg.quiet)
        std::cout << "profile: A=" << p.amplitude << " residual=" << p.residual
                  << " asymmetry=" << p.asymmetry_value
                  << (p.converged ? " (converged)" : " (NOT converged)") << "\n";
    if (!p.converged) {
        emit_failures_json({"profile did not reach its residual target"});
        return 3;
    }
    return 0;
}

int cmd_sweep(const CliOptions& opt) {
    sqg::RunConfig cfg = load(opt);
    std::filesystem::create_directories(cfg.out_dir);

    auto f = sqg::HomogeneousProfile::from_function(
        [&cfg](double phi) { return std::cos(cfg.data_m * phi); });
    sqg::SymmetryGroup G = sqg::SymmetryGroup::rotation_reflection(cfg.data_m);
    sqg::SymmetryGroup Gbar = sqg::SymmetryGroup::rotation(cfg.data_m);

    std::vector<double> As;
    for (int i = 0; i < cfg.sweep_count; ++i) {
        double w = cfg.sweep_count == 1 ? 0.0 : static_cast<double>(i) / (cfg.sweep_count - 1);
        As.push_back(cfg.sweep_a_min * std::pow(cfg.sweep_a_max / cfg.sweep_a_min, w));
    }

    sqg::SimilarityConfig scfg;
    scfg.grid = sqg::make_grid(cfg.sim_n, cfg.sim_l);
    scfg.s_max = cfg.sim_s_max;
    scfg.tol_factor = cfg.sim_tol_factor;
    scfg.sponge_rate = cfg.sponge_rate;

    sqg::Branch br = sqg::sweep_amplitude(f, As, G, Gbar, scfg);

    std::ofstream csv(cfg.out_dir + "/branch.csv");
    csv << "A,residual,asymmetry,converged\n";
    char buf[160];
    for (const auto& e : br.entries) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%d\n", e.amplitude, e.residual,
                      e.asym, e.converged ? 1 : 0);
        csv << buf;
    }
    if (!cfg.quiet) {
        std::cout << "sweep: " << br.entries.size() << " entries -> " << cfg.out_dir
                  << "/branch.csv\n";
        if (br.breaking_flagged)
            std::cout << "exploratory: asymmetry rose above 100x its small-A floor ("
                      << br.small_a_floor << ") -- symmetry-breaking candidate\n";
        else
            std::cout << "no symmetry-breaking candidate flagged (small-A floor "
                      << br.small_a_floor << ")\n";
    }
    return 0;
}

int cmd_stability(const CliOptions& opt) {
    sqg::RunConfig cfg = load(opt);
    std::filesystem::create_directories(cfg.out_dir);

    auto f = sqg::HomogeneousProfile::from_function(
        [&cfg](double phi) { return std::cos(cfg.data_m * phi); });
    sqg::SymmetryGroup G = group_of(cfg);

    sqg::SimilarityConfig pcfg;
    pcfg.grid = sqg::make_grid(cfg.sim_n, cfg.sim_l);
    pcfg.s_max = cfg.sim_s_max;
    pcfg.tol_factor = cfg.sim_tol_factor;
    pcfg.sponge_rate = cfg.sponge_rate;
    sqg::Profile p = sqg::solve_profile(f, cfg.data_amplitude, G, pcfg);
    if (!p.converged) {
        emit_failures_json({"profile stage did not converge"});
        return 3;
    }

    sqg::StabilityConfig scfg;
    scfg.physical_grid = sqg::make_grid(cfg.grid_n, cfg.grid_l);
    scfg.dt = cfg.dt;
    scfg.t0 = cfg.stab_t0;
    scfg.n_checkpoints = cfg.stab_checkpoints;

    // compact reflection-odd, m-fold symmetric blob
    const double sigma = std::max(cfg.grid_l / 15.0, 6.0 * scfg.physical_grid.dx);
    const int m = cfg.data_m;
    sqg::RealField pert = sqg::RealField::from_function(
        scfg.physical_grid, [&](double x, double y) {
            double r = std::hypot(x, y), phi = std::atan2(y, x);
            double u = r / sigma;
            return cfg.stab_perturbation * std::pow(u, m) * std::exp(-u * u) *
                   std::sin(m * phi) / 1.16;
        });
    sqg::StabilityResult res =
        sqg::stability_experiment(p, pert, {0.5, 1.0, 2.0}, scfg);

    std::ofstream csv(cfg.out_dir + "/stability.csv");
    csv << "t";
    for (double R : res.radii) csv << ",e_R" << R;
    for (double R : res.radii) csv << ",decay_R" << R;
    csv << "\n";
    for (size_t k = 0; k < res.times.size(); ++k) {
        csv << res.times[k];
        for (size_t r = 0; r < res.radii.size(); ++r) {
            if (res.valid[k][r])
                csv << ',' << res.error[k][r];
            else
                csv << ",invalid";
        }
        for (size_t r = 0; r < res.radii.size(); ++r) {
            if (res.valid[k][r])
                csv << ',' << res.decay[k][r];
            else
                csv << ",invalid";
        }
        csv << "\n";
    }
    if (!cfg.quiet)
        std::cout << "stability: fitted decay exponent " << res.fitted_decay_exponent
                  << " (exploratory) -> " << cfg.out_dir << "/stability.csv\n";
    return 0;
}

int cmd_norms(const CliOptions& opt) {
    sqg::RunConfig cfg = load(opt);
    std::filesystem::create_directories(cfg.out_dir);

    sqg::Grid g = sqg::make_grid(cfg.grid_n, cfg.grid_l);
    sqg::RealField theta0 = build_data(cfg, g);

    sqg::NormConfig ncfg;
    ncfg.p = cfg.norm_p;
    ncfg.alpha = cfg.norm_alpha;

    sqg::YbbRecord y = ybb_alpha(theta0, ncfg);
    std::ofstream csv(cfg.out_dir + "/norms.csv");
    csv << "xp,xp_osc,linf,ydot,riesz_linf,grad_l2weak,ybb_total\n";
    csv << sqg::xp_norm(theta0, ncfg) << ',' << sqg::xp_osc_norm(theta0, ncfg) << ','
        << y.linf << ',' << y.ydot << ',' << y.riesz_linf << ',' << y.grad_l2weak << ','
        << y.total << "\n";
    if (!cfg.quiet)
        std::cout << "norms: X_p=" << sqg::xp_norm(theta0, ncfg) << " ybb=" << y.total
                  << " -> " << cfg.out_dir << "/norms.csv\n";
    return 0;
}

int cmd_check(const CliOptions& opt) {
    auto results = sqg::run_check_suite(opt.suite);
    std::vector<std::string> failures;
    std::printf("%-10s %-42s %-6s %12s %12s\n", "suite", "check", "state", "value", "bound");
    for (const auto& r : results) {
        std::printf("%-10s %-42s %-6s %12.3e %12.3e\n", r.suite.c_str(), r.name.c_str(),
                    r.pass ? "ok" : "FAIL", r.value, r.threshold);
        if (!r.pass) failures.push_back(r.suite + ": " + r.name);
    }
    std::printf("%zu checks, %zu failures\n", results.size(), failures.size());
    if (!failures.empty()) {
        emit_failures_json(failures);
        return 4;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for critical SQG with symmetry-fixed Riesz gauge"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    CliOptions opt;
    app.add_option("--config", opt.config_path, "config file (key = value lines)");
    app.add_option("--out", opt.out_dir, "output directory (overrides config)");
    app.add_option("--seed", opt.seed, "RNG seed (overrides config)");
    app.add_flag("--quiet", opt.quiet, "suppress progress lines");

    auto* sim = app.add_subcommand("simulate", "evolve data and write diagnostics");
    auto* prof = app.add_subcommand("profile", "solve a similarity-variable steady profile");
    auto* sweep = app.add_subcommand("sweep", "amplitude continuation; writes branch.csv");
    auto* stab = app.add_subcommand("stability", "profile + perturbation decay experiment");
    auto* norms = app.add_subcommand("norms", "weighted-norm report for the configured data");
    auto* check = app.add_subcommand("check", "run property suites");
    check->add_option("--suite", opt.suite, "spectral|symmetry|norms|evolve|all");

    auto* defaults = app.add_subcommand("defaults", "print the config default table");

    CLI11_PARSE(app, argc, argv);

    if (const char* threads = std::getenv("SQG_NUM_THREADS"); threads != nullptr) {
        // operations are single-threaded; the cap is honored trivially but
        // validated so configs fail loudly
        if (std::atoi(threads) < 1) {
            std::cerr << "SQG_NUM_THREADS must be >= 1\n";
            return 2;
        }
    }

    try {
        if (defaults->parsed()) {
            std::cout << sqg::default_table();
            return 0;
        }
        if (sim->parsed()) return cmd_simulate(opt);
        if (prof->parsed()) return cmd_profile(opt);
        if (sweep->parsed()) return cmd_sweep(opt);
        if (stab->parsed()) return cmd_stability(opt);
        if (norms->parsed()) return cmd_norms(opt);
        if (check->parsed()) return cmd_check(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::string what = e.what();
        std::cerr << "error: " << what << "\n";
        return what.rfind("config error", 0) == 0 || what.find("cannot open") != std::string::npos
                   ? 2
                   : 3;
    }
    return 0;
}
