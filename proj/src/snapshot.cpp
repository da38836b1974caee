#include "sqglab/snapshot.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace sqg {

namespace {

static_assert(sizeof(double) == 8, "snapshot format requires 8-byte doubles");

bool machine_is_little_endian() {
    const std::uint16_t probe = 1;
    return *reinterpret_cast<const std::uint8_t*>(&probe) == 1;
}

void byteswap_all(std::vector<double>& v) {
    for (double& d : v) {
        std::uint64_t u;
        std::memcpy(&u, &d, 8);
        u = __builtin_bswap64(u);
        std::memcpy(&d, &u, 8);
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_snapshot(const RealField& f, double t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);

    out << "SQGF1 n=" << f.grid().n << " l=" << format_double(f.grid().l)
        << " t=" << format_double(t) << "\n";

    std::vector<double> payload = f.values();
    if (!machine_is_little_endian()) byteswap_all(payload);
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write_snapshot: short write to " + path);
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);

    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("read_snapshot: missing header");

    int n = 0;
    double l = 0.0, t = 0.0;
    char magic[16] = {0};
    if (std::sscanf(header.c_str(), "%15s n=%d l=%lg t=%lg", magic, &n, &l, &t) != 4)
        throw std::runtime_error("read_snapshot: malformed header: " + header);
    if (std::strcmp(magic, "SQGF1") != 0)
        throw std::runtime_error("read_snapshot: bad magic or unknown version: " +
                                 std::string(magic));

    Grid g = make_grid(n, l);
    Snapshot snap{RealField(g), t};
    auto& v = snap.field.values();
    in.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (static_cast<size_t>(in.gcount()) != v.size() * sizeof(double))
        throw std::runtime_error("read_snapshot: truncated payload (header says n=" +
                                 std::to_string(n) + ")");
    char extra;
    if (in.read(&extra, 1))
        throw std::runtime_error("read_snapshot: payload longer than header declares");
    if (!machine_is_little_endian()) byteswap_all(v);
    return snap;
}

void write_diagnostics_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_diagnostics_csv: cannot open " + path);

    out << "step,t,linf,grad_linf,t_grad_linf,energy,dissipation,energy_residual,"
           "mean_drift_R1,mean_drift_R2,mean_drift_R3,mean_drift_R4,"
           "psi_p4,max_principle_margin,asymmetry\n";
    for (const auto& d : traj.diagnostics) {
        out << d.step << ',' << format_double(d.t) << ',' << format_double(d.linf) << ','
            << format_double(d.grad_linf) << ',' << format_double(d.t_grad_linf) << ','
            << format_double(d.energy) << ',' << format_double(d.dissipation) << ','
            << format_double(d.energy_residual) << ',' << format_double(d.mean_drift[0])
            << ',' << format_double(d.mean_drift[1]) << ',' << format_double(d.mean_drift[2])
            << ',' << format_double(d.mean_drift[3]) << ',' << format_double(d.psi_p4) << ','
            << format_double(d.max_principle_margin) << ',' << format_double(d.asymmetry)
            << '\n';
    }
    if (!out) throw std::runtime_error("write_diagnostics_csv: short write");
}

} // namespace sqg
