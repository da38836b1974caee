#include "sqglab/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "sqglab/grid.hpp"

namespace sqg {

namespace {

struct KeySpec {
    const char* name;
    const char* def;
    const char* doc;
    std::function<void(RunConfig&, const std::string&)> apply;
};

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::runtime_error("config error (line " + std::to_string(line) + "): " + msg);
}

double parse_double(const std::string& v, int line) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (...) {
        fail(line, "expected a number, got '" + v + "'");
    }
}

long long parse_int(const std::string& v, int line) {
    try {
        size_t pos = 0;
        long long d = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (...) {
        fail(line, "expected an integer, got '" + v + "'");
    }
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(line, "expected a boolean, got '" + v + "'");
}

int g_line = 0; // line being applied, for the typed helpers

const std::vector<KeySpec>& specs() {
    static const std::vector<KeySpec> table = {
        {"grid.n", "128", "points per axis (power of two >= 16)",
         [](RunConfig& c, const std::string& v) { c.grid_n = static_cast<int>(parse_int(v, g_line)); }},
        {"grid.l", "6.0", "half box side",
         [](RunConfig& c, const std::string& v) { c.grid_l = parse_double(v, g_line); }},
        {"data.kind", "homogeneous", "homogeneous|bump|random_symmetric|file",
         [](RunConfig& c, const std::string& v) { c.data_kind = v; }},
        {"data.m", "3", "rotation order of the data symmetry",
         [](RunConfig& c, const std::string& v) { c.data_m = static_cast<int>(parse_int(v, g_line)); }},
        {"data.reflection", "true", "include the odd reflection in the group",
         [](RunConfig& c, const std::string& v) { c.data_reflection = parse_bool(v, g_line); }},
        {"data.amplitude", "0.05", "data amplitude A",
         [](RunConfig& c, const std::string& v) { c.data_amplitude = parse_double(v, g_line); }},
        {"data.seed", "(none)", "RNG seed; mandatory for random data",
         [](RunConfig& c, const std::string& v) {
             c.seed = static_cast<std::uint64_t>(parse_int(v, g_line));
         }},
        {"data.file", "", "snapshot path when data.kind = file",
         [](RunConfig& c, const std::string& v) { c.data_file = v; }},
        {"solver.dt", "2e-3", "time step",
         [](RunConfig& c, const std::string& v) { c.dt = parse_double(v, g_line); }},
        {"solver.t_end", "1.0", "final time",
         [](RunConfig& c, const std::string& v) { c.t_end = parse_double(v, g_line); }},
        {"solver.scheme", "etd2", "etd1|etd2",
         [](RunConfig& c, const std::string& v) {
             if (v != "etd1" && v != "etd2") fail(g_line, "scheme must be etd1 or etd2");
             c.scheme = v;
         }},
        {"solver.resymmetrize_every", "0", "projection cadence (0 = never)",
         [](RunConfig& c, const std::string& v) {
             c.resymmetrize_every = static_cast<int>(parse_int(v, g_line));
         }},
        {"solver.snapshot_every", "50", "snapshot cadence in steps",
         [](RunConfig& c, const std::string& v) {
             c.snapshot_every = static_cast<int>(parse_int(v, g_line));
         }},
        {"solver.diag_every", "1", "diagnostics cadence in steps",
         [](RunConfig& c, const std::string& v) {
             c.diag_every = static_cast<int>(parse_int(v, g_line));
         }},
        {"solver.mollify_delta", "(off)", "approximate-law mollification delta in (0,1]",
         [](RunConfig& c, const std::string& v) { c.mollify_delta = parse_double(v, g_line); }},
        {"solver.mollify_rho", "4.0", "approximate-law cutoff rho >= 1",
         [](RunConfig& c, const std::string& v) { c.mollify_rho = parse_double(v, g_line); }},
        {"sim.n", "128", "similarity grid points per axis",
         [](RunConfig& c, const std::string& v) { c.sim_n = static_cast<int>(parse_int(v, g_line)); }},
        {"sim.l", "5.0", "similarity half box side L_y",
         [](RunConfig& c, const std::string& v) { c.sim_l = parse_double(v, g_line); }},
        {"sim.s_max", "40.0", "pseudo-time budget",
         [](RunConfig& c, const std::string& v) { c.sim_s_max = parse_double(v, g_line); }},
        {"sim.tol_factor", "1e-5", "profile residual target = tol_factor * A",
         [](RunConfig& c, const std::string& v) { c.sim_tol_factor = parse_double(v, g_line); }},
        {"sim.sponge_rate", "6.0", "sponge relaxation rate",
         [](RunConfig& c, const std::string& v) { c.sponge_rate = parse_double(v, g_line); }},
        {"sweep.a_min", "0.1", "first amplitude",
         [](RunConfig& c, const std::string& v) { c.sweep_a_min = parse_double(v, g_line); }},
        {"sweep.a_max", "5.0", "last amplitude",
         [](RunConfig& c, const std::string& v) { c.sweep_a_max = parse_double(v, g_line); }},
        {"sweep.count", "12", "number of amplitudes",
         [](RunConfig& c, const std::string& v) {
             c.sweep_count = static_cast<int>(parse_int(v, g_line));
         }},
        {"stability.perturbation", "0.02", "perturbation amplitude",
         [](RunConfig& c, const std::string& v) { c.stab_perturbation = parse_double(v, g_line); }},
        {"stability.t0", "0.25", "first dyadic checkpoint",
         [](RunConfig& c, const std::string& v) { c.stab_t0 = parse_double(v, g_line); }},
        {"stability.checkpoints", "5", "number of dyadic checkpoints",
         [](RunConfig& c, const std::string& v) {
             c.stab_checkpoints = static_cast<int>(parse_int(v, g_line));
         }},
        {"norms.p", "2.0", "exponent for the norms command",
         [](RunConfig& c, const std::string& v) { c.norm_p = parse_double(v, g_line); }},
        {"norms.alpha", "0.5", "Holder exponent in (0,1)",
         [](RunConfig& c, const std::string& v) { c.norm_alpha = parse_double(v, g_line); }},
        {"output.dir", "out", "output directory",
         [](RunConfig& c, const std::string& v) { c.out_dir = v; }},
        {"output.quiet", "false", "suppress progress lines",
         [](RunConfig& c, const std::string& v) { c.quiet = parse_bool(v, g_line); }},
    };
    return table;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        if (val.empty()) fail(lineno, "empty value for key '" + key + "'");

        bool found = false;
        for (const auto& spec : specs()) {
            if (key == spec.name) {
                g_line = lineno;
                spec.apply(cfg, val);
                found = true;
                break;
            }
        }
        if (!found) fail(lineno, "unknown key '" + key + "'");
    }

    if (!is_power_of_two(cfg.grid_n) || cfg.grid_n < 16)
        throw std::runtime_error("config error: grid.n must be a power of two >= 16");
    if (!is_power_of_two(cfg.sim_n) || cfg.sim_n < 16)
        throw std::runtime_error("config error: sim.n must be a power of two >= 16");
    if (cfg.data_kind == "random_symmetric" && !cfg.seed)
        throw std::runtime_error("config error: data.seed is mandatory for random data");
    if (cfg.data_kind != "homogeneous" && cfg.data_kind != "bump" &&
        cfg.data_kind != "random_symmetric" && cfg.data_kind != "file")
        throw std::runtime_error("config error: unknown data.kind '" + cfg.data_kind + "'");
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string default_table() {
    std::string out = "key                          default      description\n";
    for (const auto& s : specs()) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-28s %-12s %s\n", s.name, s.def, s.doc);
        out += buf;
    }
    return out;
}

} // namespace sqg
