#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace sqg {

/// Flat `key = value` document with `#` comments. Unknown keys are rejected;
/// every key has a documented default (see default_table()). A seed is
/// mandatory whenever the data kind is random.
struct RunConfig {
    // grid
    int grid_n = 128;
    double grid_l = 6.0;

    // data specification
    std::string data_kind = "homogeneous"; // homogeneous|bump|random_symmetric|file
    int data_m = 3;
    bool data_reflection = true;
    double data_amplitude = 0.05;
    std::optional<std::uint64_t> seed;
    std::string data_file;

    // solver
    double dt = 2e-3;
    double t_end = 1.0;
    std::string scheme = "etd2"; // etd1|etd2
    int resymmetrize_every = 0;
    int snapshot_every = 50;
    int diag_every = 1;
    std::optional<double> mollify_delta;
    double mollify_rho = 4.0;

    // similarity lab
    int sim_n = 128;
    double sim_l = 5.0;
    double sim_s_max = 40.0;
    double sim_tol_factor = 1e-5;
    double sponge_rate = 6.0;

    // sweep
    double sweep_a_min = 0.1;
    double sweep_a_max = 5.0;
    int sweep_count = 12;

    // stability
    double stab_perturbation = 0.02;
    double stab_t0 = 0.25;
    int stab_checkpoints = 5;

    // norms command
    double norm_p = 2.0;
    double norm_alpha = 0.5;

    // output
    std::string out_dir = "out";
    bool quiet = false;
};

/// Parse a config document; throws std::runtime_error with a line number on
/// the first unknown key, type mismatch, or missing mandatory key.
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

/// One line per key: name, default, description.
std::string default_table();

} // namespace sqg
